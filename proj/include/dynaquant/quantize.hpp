// quantize.hpp — classical dynamical operators → superoperators, and back
#pragma once

#include "dynaquant/liouville.hpp"
#include "dynaquant/symbols.hpp"

namespace dynaquant {

// ---------- quantization ----------

// QP-ordered lift: coeff q^a p^b ∂q^c ∂p^d ↦ coeff (Q¹)ᵃ(Q²)ᵇ(iP¹)ᶜ(iP²)ᵈ,
// coordinates to the left of derivatives (derivative factors act first).
SuperOperator quantize_qp(const FockSpacePtr& s, const DynOperator& L);

// Symmetrized lift: each term averages q^a p^b ∂q^c ∂p^d over all orderings
// of its factor multiset {Q¹×a, Q²×b, iP¹×c, iP²×d}.  Term degree ≤ 8.
SuperOperator quantize_symmetric(const FockSpacePtr& s, const DynOperator& L);

// (i/ħ)[Ĥ, ·] with Ĥ the symmetrized operator of a real polynomial symbol
// (observable/Heisenberg flow, the lift of f ↦ {f, H}).
SuperOperator hamiltonian_generator(const FockSpacePtr& s, const PolynomialSymbol& H);

// ---------- kinetic master generator ----------

// Density-picture master generator assembled directly from commutator and
// symmetric-multiplication superoperators under the parameter map
//   m = −1/c_pq,  ω² = −c_qp·c_pq,  λ = ½(c_pp+c_qq),  μ = ½(c_pp−c_qq):
//   −(i/ħ)C_H + (i(λ−μ)/ħ) C_p J_q − (i(λ+μ)/ħ) C_q J_p
//   − (d_pp/ħ²) C_q² − (d_qq/ħ²) C_p² + (2 d_qp/ħ²) C_p C_q.
// Requires c_pq ≠ 0 and a positive mapped mass.
SuperOperator build_fp_master_direct(const FockSpacePtr& s, const FpCoefficients& c);

// Constant term h* that makes the lifted kinetic generator trace-preserving
// on interior operands, found from the adjoint action on the identity.
struct TraceScan {
  double h_star = 0;            // fitted constant
  double residual = 0;          // interior defect at h = h_star
  double h_reference = 0;       // −2(c_pp+c_qq), surfaced for comparison
  bool matches_reference = false;
};

TraceScan trace_preservation_scan(const FockSpacePtr& s, const FpCoefficients& c);

// ---------- dequantization ----------

// Least-squares recovery of a QP-ordered dynamical operator (total term
// degree ≤ max_degree ≤ 4) whose lift matches S.  The monomial-basis QR is
// cached per (space, degree).  Throws RankDeficientError when the basis
// columns are collinear at this dimension.
DynOperator dequantize(const SuperOperator& S, int max_degree);

} // namespace dynaquant
