// liouville.hpp — superoperators on the matrix space of a truncated oscillator
#pragma once

#include "dynaquant/fock.hpp"

namespace dynaquant {

// dim² × dim² matrix acting on column-stacked operators of a space.
struct SuperOperator {
  FockSpacePtr space;
  Matrix mat;
};

// ---------- construction ----------

SuperOperator identity_super(const FockSpacePtr& s);
SuperOperator zero_super(const FockSpacePtr& s);

// X ↦ A X  and  X ↦ X A  as matrices on vec(X).
SuperOperator left_mult(const Operator& A);
SuperOperator right_mult(const Operator& A);

// X ↦ ½(A X + X A)  (symmetric multiplication by A).
SuperOperator jordan_mult(const Operator& A);
// X ↦ A X − X A.
SuperOperator commutator_mult(const Operator& A);

// Coordinate superoperators, k ∈ {1, 2}:
//   Q¹ = ½(q̂ᴸ + q̂ᴿ)        Q² = ½(p̂ᴸ + p̂ᴿ)
//   P¹ = (p̂ᴸ − p̂ᴿ)/ħ        P² = −(q̂ᴸ − q̂ᴿ)/ħ
// so that [Qᵏ, Pˡ] = i δᵏˡ on interior operands.
SuperOperator q_super(const FockSpacePtr& s, int k);
SuperOperator p_super(const FockSpacePtr& s, int k);

// exp(i(aᵏ Q̂ᵏ + b_k P̂ᵏ)): left/right generator halves commute, so the
// exponential factorizes into a Kronecker product of two dim×dim
// exponentials; this is exact, not an approximation.
SuperOperator v_super(const FockSpacePtr& s, const std::array<double, 2>& a,
                      const std::array<double, 2>& b);

// ---------- application and pairing ----------

Operator apply(const SuperOperator& S, const Operator& X);

// Hilbert–Schmidt pairing ⟨A, B⟩ = Tr(A† B).
cxd hs_inner(const Operator& A, const Operator& B);

// Adjoint with respect to hs_inner: ⟨A, S B⟩ = ⟨S‡ A, B⟩.
SuperOperator superop_adjoint(const SuperOperator& S);

// S restricted to operands compressed by a projector: S · (Πᵀ ⊗ Π),
// i.e. (restrict(S, Π))(X) = S(Π X Π).
SuperOperator operand_restriction(const SuperOperator& S, const Operator& proj);

// ‖S · (Πᵀ ⊗ Π)‖_F for a diagonal projector Π, computed column-wise without
// materializing the Kronecker factor.
double operand_window_norm(const Matrix& S, const Matrix& proj);
double operand_window_norm(const SuperOperator& S, const Operator& proj);

// ---------- arithmetic ----------

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(cxd c, const SuperOperator& a);
SuperOperator operator*(const SuperOperator& a, const SuperOperator& b); // composition

} // namespace dynaquant
