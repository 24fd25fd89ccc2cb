// symbols.cpp — polynomial symbols and classical dynamical operators
#include "dynaquant/symbols.hpp"

#include <algorithm>
#include <cmath>

namespace dynaquant {

// ---------- polynomial symbols ----------

PolynomialSymbol monomial(cxd coeff, int qexp, int pexp) {
  if (qexp < 0 || pexp < 0) throw std::invalid_argument("monomial: exponents must be >= 0");
  PolynomialSymbol s;
  s.terms.push_back({coeff, qexp, pexp});
  return s;
}

PolynomialSymbol normalized(const PolynomialSymbol& s) {
  std::vector<PolyTerm> t = s.terms;
  std::sort(t.begin(), t.end(), [](const PolyTerm& a, const PolyTerm& b) {
    int da = a.qexp + a.pexp, db = b.qexp + b.pexp;
    if (da != db) return da < db;
    if (a.qexp != b.qexp) return a.qexp > b.qexp;
    return a.pexp < b.pexp;
  });
  PolynomialSymbol out;
  for (const PolyTerm& term : t) {
    if (!out.terms.empty() && out.terms.back().qexp == term.qexp &&
        out.terms.back().pexp == term.pexp) {
      out.terms.back().coeff += term.coeff;
    } else {
      out.terms.push_back(term);
    }
  }
  double scale = 0.0;
  for (const PolyTerm& term : out.terms) scale = std::max(scale, std::abs(term.coeff));
  const double cut = scale * 1e-15;
  std::erase_if(out.terms, [cut](const PolyTerm& term) { return std::abs(term.coeff) <= cut; });
  return out;
}

PolynomialSymbol operator+(const PolynomialSymbol& a, const PolynomialSymbol& b) {
  PolynomialSymbol out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return normalized(out);
}

PolynomialSymbol operator-(const PolynomialSymbol& a, const PolynomialSymbol& b) {
  return a + (cxd(-1.0, 0.0) * b);
}

PolynomialSymbol operator*(cxd c, const PolynomialSymbol& s) {
  PolynomialSymbol out = s;
  for (PolyTerm& term : out.terms) term.coeff *= c;
  return out;
}

cxd eval(const PolynomialSymbol& s, double q, double p) {
  cxd acc = 0.0;
  for (const PolyTerm& term : s.terms)
    acc += term.coeff * std::pow(q, term.qexp) * std::pow(p, term.pexp);
  return acc;
}

PolynomialSymbol diff_q(const PolynomialSymbol& s) {
  PolynomialSymbol out;
  for (const PolyTerm& term : s.terms)
    if (term.qexp > 0)
      out.terms.push_back({term.coeff * double(term.qexp), term.qexp - 1, term.pexp});
  return normalized(out);
}

PolynomialSymbol diff_p(const PolynomialSymbol& s) {
  PolynomialSymbol out;
  for (const PolyTerm& term : s.terms)
    if (term.pexp > 0)
      out.terms.push_back({term.coeff * double(term.pexp), term.qexp, term.pexp - 1});
  return normalized(out);
}

int total_degree(const PolynomialSymbol& s) {
  int d = 0;
  for (const PolyTerm& term : s.terms) d = std::max(d, term.qexp + term.pexp);
  return d;
}

bool has_real_coefficients(const PolynomialSymbol& s, double tol) {
  double scale = 0.0;
  for (const PolyTerm& term : s.terms) scale = std::max(scale, std::abs(term.coeff));
  for (const PolyTerm& term : s.terms)
    if (std::abs(term.coeff.imag()) > tol * std::max(1.0, scale)) return false;
  return true;
}

// ---------- dynamical operators ----------

DynOperator normalized(const DynOperator& L) {
  std::vector<DynTerm> t = L.terms;
  auto key = [](const DynTerm& x) {
    return std::array<int, 4>{x.qpow, x.ppow, x.dqpow, x.dppow};
  };
  std::sort(t.begin(), t.end(), [&](const DynTerm& a, const DynTerm& b) {
    int da = a.qpow + a.ppow + a.dqpow + a.dppow;
    int db = b.qpow + b.ppow + b.dqpow + b.dppow;
    if (da != db) return da < db;
    return key(a) < key(b);
  });
  DynOperator out;
  out.form = L.form;
  for (const DynTerm& term : t) {
    if (!out.terms.empty() && key(out.terms.back()) == key(term)) {
      out.terms.back().coeff += term.coeff;
    } else {
      out.terms.push_back(term);
    }
  }
  double scale = 0.0;
  for (const DynTerm& term : out.terms) scale = std::max(scale, std::abs(term.coeff));
  const double cut = scale * 1e-15;
  std::erase_if(out.terms, [cut](const DynTerm& term) { return std::abs(term.coeff) <= cut; });
  return out;
}

DynOperator operator+(const DynOperator& a, const DynOperator& b) {
  if (a.form != b.form)
    throw std::invalid_argument("DynOperator operator+: ordering forms differ");
  DynOperator out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return normalized(out);
}

DynOperator operator*(cxd c, const DynOperator& L) {
  DynOperator out = L;
  for (DynTerm& term : out.terms) term.coeff *= c;
  return out;
}

int max_term_degree(const DynOperator& L) {
  int d = 0;
  for (const DynTerm& term : L.terms)
    d = std::max(d, term.qpow + term.ppow + term.dqpow + term.dppow);
  return d;
}

int max_derivative_order(const DynOperator& L) {
  int d = 0;
  for (const DynTerm& term : L.terms) d = std::max(d, term.dqpow + term.dppow);
  return d;
}

bool has_real_coefficients(const DynOperator& L, double tol) {
  double scale = 0.0;
  for (const DynTerm& term : L.terms) scale = std::max(scale, std::abs(term.coeff));
  for (const DynTerm& term : L.terms)
    if (std::abs(term.coeff.imag()) > tol * std::max(1.0, scale)) return false;
  return true;
}

DynOperator poisson_generator(const PolynomialSymbol& H) {
  // Observable flow f ↦ {f, H} = ∂p H · ∂q f − ∂q H · ∂p f.
  DynOperator out;
  out.form = DynForm::QP;
  for (const PolyTerm& term : normalized(diff_p(H)).terms)
    out.terms.push_back({term.coeff, term.qexp, term.pexp, 1, 0});
  for (const PolyTerm& term : normalized(diff_q(H)).terms)
    out.terms.push_back({-term.coeff, term.qexp, term.pexp, 0, 1});
  return normalized(out);
}

DynOperator damped_oscillator_dynop(double mass, double omega, double gamma) {
  if (!(mass > 0.0)) throw std::invalid_argument("damped_oscillator_dynop: mass must be > 0");
  DynOperator out;
  out.form = DynForm::QP;
  out.terms.push_back({cxd(1.0 / mass, 0.0), 0, 1, 1, 0});                 // (1/m) p ∂q
  out.terms.push_back({cxd(-mass * omega * omega, 0.0), 1, 0, 0, 1});      // −mω² q ∂p
  if (gamma != 0.0) out.terms.push_back({cxd(-gamma / mass, 0.0), 0, 1, 0, 1}); // −(γ/m) p ∂p
  return normalized(out);
}

DynOperator fokker_planck_dynop(const FpCoefficients& c) {
  DynOperator out;
  out.form = DynForm::QP;
  auto push = [&out](double v, int a, int b, int dc, int dd) {
    if (v != 0.0) out.terms.push_back({cxd(v, 0.0), a, b, dc, dd});
  };
  push(c.d_qq, 0, 0, 2, 0);
  push(2.0 * c.d_qp, 0, 0, 1, 1);
  push(c.d_pp, 0, 0, 0, 2);
  push(c.c_qq, 1, 0, 1, 0);
  push(c.c_qp, 1, 0, 0, 1);
  push(c.c_pq, 0, 1, 1, 0);
  push(c.c_pp, 0, 1, 0, 1);
  push(c.h, 0, 0, 0, 0);
  return normalized(out);
}

} // namespace dynaquant
