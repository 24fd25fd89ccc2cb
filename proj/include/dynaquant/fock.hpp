// fock.hpp — truncated oscillator space, canonical operators, Weyl machinery
#pragma once

#include "dynaquant/phasegrid.hpp"
#include "dynaquant/symbols.hpp"

#include <memory>

namespace dynaquant {

// ---------- space and operators ----------

// Number basis truncated to `dim` levels with physical scales attached.
// q and p are the canonical quadratures; their commutator equals iħ(I + K)
// with a defect K supported on the top level only.
struct FockSpace {
  int dim = 0;
  double hbar = 1.0, mass = 1.0, omega = 1.0;
  Matrix q, p;
};

using FockSpacePtr = std::shared_ptr<const FockSpace>;

FockSpacePtr build_space(int dim, double hbar = 1.0, double mass = 1.0, double omega = 1.0);

// Lowering ladder matrix a with a(n-1, n) = sqrt(n).
Matrix lowering(int dim);

// Operator on a specific space.
struct Operator {
  FockSpacePtr space;
  Matrix mat;
};

bool same_space(const FockSpacePtr& a, const FockSpacePtr& b);

Operator identity_op(const FockSpacePtr& s);
Operator q_op(const FockSpacePtr& s);
Operator p_op(const FockSpacePtr& s);

// p²/2m + m ω_sq q²/2 built from the space quadratures; the overloads without
// explicit parameters use the space's own mass and omega.
Matrix harmonic_hamiltonian(const FockSpace& s, double mass, double omega_sq);
Operator harmonic_hamiltonian(const FockSpacePtr& s);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cxd c, const Operator& a);
Operator operator*(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);
cxd trace(const Operator& a);
double frobenius_norm(const Operator& a);

// Symmetric (Jordan) product ½(AB + BA).
Operator jordan(const Operator& a, const Operator& b);
// Scaled commutator (AB − BA)/(iħ); the classical-limit bracket.
Operator lie(const Operator& a, const Operator& b);

// Diagonal projector onto the lowest `levels` number states (default dim-2,
// which removes the two levels touched by the truncation defect of q·p).
Operator interior_projector(const FockSpacePtr& s, int levels = -1);

// Truncated coherent density |α⟩⟨α| with the truncated ket renormalized.
// Requires |α|² ≤ dim/4 so the Poissonian tail lies inside the space.
Operator coherent_state(const FockSpacePtr& s, cxd alpha);
Vector coherent_ket(const FockSpacePtr& s, cxd alpha);
Operator fock_state(const FockSpacePtr& s, int level);

// ---------- Weyl machinery ----------

// exp(i(a1 q̂ + a2 p̂)) on the truncated space.
Operator weyl_operator(const FockSpacePtr& s, double a1, double a2);

// Fully symmetrized operator of a polynomial symbol, term by term.
Operator weyl_quantize_poly(const FockSpacePtr& s, const PolynomialSymbol& sym);

// Reference symmetrization: average q^a p^b over all distinct factor
// orderings.  Guarded to total degree ≤ 8 (cost grows combinatorially).
Operator symmetrize_bruteforce(const FockSpacePtr& s, int qexp, int pexp);

// Truncation of the infinite-dimensional displacement exp(μ a† − μ̄ a) using
// the closed-form Laguerre band elements.  Unlike exponentiating the
// truncated ladder, this kernel decays for large |μ| and is the right
// ingredient for symbol reconstruction.
Matrix displacement_matrix(int dim, cxd mu);

// Phase-space symbol of an operator: displaced-trace transform evaluated on a
// midpoint frequency lattice (64 points per axis, cutoff π/grid-spacing) and
// normalized so the identity operator maps to the unit symbol.
GridSymbol weyl_symbol(const Operator& A, const PhaseGrid& grid);

} // namespace dynaquant
