// liouville.cpp — superoperators on the matrix space of a truncated oscillator
#include "dynaquant/liouville.hpp"

#include <cmath>

namespace dynaquant {

static void require_same(const SuperOperator& a, const SuperOperator& b, const char* who) {
  if (!same_space(a.space, b.space))
    throw std::invalid_argument(std::string(who) + ": superoperators live on different spaces");
}

// ---------- construction ----------

SuperOperator identity_super(const FockSpacePtr& s) {
  const Index n2 = Index(s->dim) * s->dim;
  return {s, Matrix::Identity(n2, n2)};
}

SuperOperator zero_super(const FockSpacePtr& s) {
  const Index n2 = Index(s->dim) * s->dim;
  return {s, Matrix::Zero(n2, n2)};
}

SuperOperator left_mult(const Operator& A) {
  const Index n = A.mat.rows();
  return {A.space, kron(Matrix::Identity(n, n), A.mat)};
}

SuperOperator right_mult(const Operator& A) {
  const Index n = A.mat.rows();
  return {A.space, kron(A.mat.transpose(), Matrix::Identity(n, n))};
}

SuperOperator jordan_mult(const Operator& A) {
  SuperOperator l = left_mult(A), r = right_mult(A);
  return {A.space, 0.5 * (l.mat + r.mat)};
}

SuperOperator commutator_mult(const Operator& A) {
  SuperOperator l = left_mult(A), r = right_mult(A);
  return {A.space, l.mat - r.mat};
}

SuperOperator q_super(const FockSpacePtr& s, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("q_super: k must be 1 or 2");
  return jordan_mult(k == 1 ? q_op(s) : p_op(s));
}

SuperOperator p_super(const FockSpacePtr& s, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("p_super: k must be 1 or 2");
  const double h = s->hbar;
  if (k == 1) {
    SuperOperator c = commutator_mult(p_op(s));
    return {s, c.mat / h};
  }
  SuperOperator c = commutator_mult(q_op(s));
  return {s, -c.mat / h};
}

SuperOperator v_super(const FockSpacePtr& s, const std::array<double, 2>& a,
                      const std::array<double, 2>& b) {
  // i(aᵏQᵏ + b_kPᵏ) splits into commuting left and right halves:
  //   left  = i[(a1/2 − b2/ħ) q̂ + (a2/2 + b1/ħ) p̂]   acting as X ↦ M X
  //   right = i[(a1/2 + b2/ħ) q̂ + (a2/2 − b1/ħ) p̂]   acting as X ↦ X M
  // hence exp = (exp(right))ᵀ ⊗ exp(left) exactly.
  const double h = s->hbar;
  Matrix gl = cxd(0.0, 1.0) *
              ((0.5 * a[0] - b[1] / h) * s->q + (0.5 * a[1] + b[0] / h) * s->p);
  Matrix gr = cxd(0.0, 1.0) *
              ((0.5 * a[0] + b[1] / h) * s->q + (0.5 * a[1] - b[0] / h) * s->p);
  return {s, kron(expm(gr).transpose().eval(), expm(gl))};
}

// ---------- application and pairing ----------

Operator apply(const SuperOperator& S, const Operator& X) {
  if (!same_space(S.space, X.space))
    throw std::invalid_argument("apply: superoperator and operand spaces differ");
  return {X.space, unvec(S.mat * vec(X.mat), X.mat.rows(), X.mat.cols())};
}

cxd hs_inner(const Operator& A, const Operator& B) {
  if (!same_space(A.space, B.space))
    throw std::invalid_argument("hs_inner: operators live on different spaces");
  return (A.mat.adjoint() * B.mat).trace();
}

SuperOperator superop_adjoint(const SuperOperator& S) { return {S.space, S.mat.adjoint()}; }

SuperOperator operand_restriction(const SuperOperator& S, const Operator& proj) {
  if (!same_space(S.space, proj.space))
    throw std::invalid_argument("operand_restriction: spaces differ");
  return {S.space, S.mat * kron(proj.mat.transpose().eval(), proj.mat)};
}

double operand_window_norm(const Matrix& S, const Matrix& proj) {
  const Index n = proj.rows();
  if (proj.cols() != n || S.cols() != n * n)
    throw std::invalid_argument("operand_window_norm: shape mismatch");
  double acc = 0.0;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const double w = std::norm(proj(a, a) * proj(b, b));
      if (w != 0.0) acc += w * S.col(a * n + b).squaredNorm();
    }
  return std::sqrt(acc);
}

double operand_window_norm(const SuperOperator& S, const Operator& proj) {
  if (!same_space(S.space, proj.space))
    throw std::invalid_argument("operand_window_norm: spaces differ");
  return operand_window_norm(S.mat, proj.mat);
}

// ---------- arithmetic ----------

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  require_same(a, b, "SuperOperator operator+");
  return {a.space, a.mat + b.mat};
}
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  require_same(a, b, "SuperOperator operator-");
  return {a.space, a.mat - b.mat};
}
SuperOperator operator*(cxd c, const SuperOperator& a) { return {a.space, c * a.mat}; }
SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
  require_same(a, b, "SuperOperator operator*");
  return {a.space, a.mat * b.mat};
}

} // namespace dynaquant
