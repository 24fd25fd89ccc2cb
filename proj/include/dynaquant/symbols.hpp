// symbols.hpp — polynomial phase-space symbols and classical dynamical operators
#pragma once

#include "dynaquant/linalg.hpp"

#include <vector>

namespace dynaquant {

// ---------- polynomial symbols ----------

// One monomial  coeff * q^qexp * p^pexp.
struct PolyTerm {
  cxd coeff{0.0, 0.0};
  int qexp = 0;
  int pexp = 0;
};

// Polynomial function on phase space, stored as a term list.
struct PolynomialSymbol {
  std::vector<PolyTerm> terms;
};

PolynomialSymbol monomial(cxd coeff, int qexp, int pexp);

// Merge duplicate monomials, drop (near-)zero coefficients, sort by total
// degree then lexicographically.  Canonical form for comparisons.
PolynomialSymbol normalized(const PolynomialSymbol& s);

PolynomialSymbol operator+(const PolynomialSymbol& a, const PolynomialSymbol& b);
PolynomialSymbol operator-(const PolynomialSymbol& a, const PolynomialSymbol& b);
PolynomialSymbol operator*(cxd c, const PolynomialSymbol& s);

cxd eval(const PolynomialSymbol& s, double q, double p);
PolynomialSymbol diff_q(const PolynomialSymbol& s);
PolynomialSymbol diff_p(const PolynomialSymbol& s);

int total_degree(const PolynomialSymbol& s);
bool has_real_coefficients(const PolynomialSymbol& s, double tol = 1e-14);

// ---------- classical dynamical operators ----------

// Ordering convention for the operator-valued lift of each term.
//  QP        — coordinates to the left of derivatives, term by term.
//  Symmetric — fully symmetrized (Weyl) ordering over all factors.
enum class DynForm { QP, Symmetric };

// One term  coeff * q^qpow p^ppow ∂q^dqpow ∂p^dppow  of a dynamical operator
// acting on phase-space functions.
struct DynTerm {
  cxd coeff{0.0, 0.0};
  int qpow = 0;
  int ppow = 0;
  int dqpow = 0;
  int dppow = 0;
};

struct DynOperator {
  DynForm form = DynForm::QP;
  std::vector<DynTerm> terms;
};

inline DynOperator with_form(DynOperator L, DynForm f) {
  L.form = f;
  return L;
}

DynOperator normalized(const DynOperator& L);
DynOperator operator+(const DynOperator& a, const DynOperator& b);
DynOperator operator*(cxd c, const DynOperator& L);
int max_term_degree(const DynOperator& L);   // max over terms of total factor count
int max_derivative_order(const DynOperator& L);
bool has_real_coefficients(const DynOperator& L, double tol = 1e-14);

// Generator of observable flow under Hamiltonian H:  f ↦ {f, H} = ∂pH ∂qf − ∂qH ∂pf.
DynOperator poisson_generator(const PolynomialSymbol& H);

// Damped harmonic oscillator:  (1/m) p ∂q − (m ω² q + (γ/m) p) ∂p.
DynOperator damped_oscillator_dynop(double mass, double omega, double gamma);

// Coefficients of a linear drift / constant diffusion kinetic operator.
struct FpCoefficients {
  double c_qq = 0, c_qp = 0, c_pq = 0, c_pp = 0; // drift:  c_xy · x ∂y
  double d_qq = 0, d_qp = 0, d_pp = 0;           // diffusion:  d_xy · ∂x ∂y
  double h = 0;                                   // multiplication by a constant
};

// d_qq ∂q² + 2 d_qp ∂q∂p + d_pp ∂p² + c_qq q∂q + c_qp q∂p + c_pq p∂q + c_pp p∂p + h.
DynOperator fokker_planck_dynop(const FpCoefficients& c);

} // namespace dynaquant
