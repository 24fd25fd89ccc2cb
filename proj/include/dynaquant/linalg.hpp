// linalg.hpp — dense complex linear algebra: kron, vec/unvec, expm, least squares
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace dynaquant {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// ---------- kron ----------

// Kronecker product: (A ⊗ B)((i-1)p+k, (j-1)q+l) = A(i,j) B(k,l).
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = cxd(A(i, j)) * B;
  return out;
}

// In-place out += w · (A ⊗ B).  Zero entries of A are skipped, so for banded
// A the cost is proportional to the number of nonzero blocks, not rows·cols.
template <typename DerivedA, typename DerivedB>
void kron_accumulate(Matrix& out, cxd w, const Eigen::MatrixBase<DerivedA>& A,
                     const Eigen::MatrixBase<DerivedB>& B) {
  if (out.rows() != A.rows() * B.rows() || out.cols() != A.cols() * B.cols())
    throw std::invalid_argument("kron_accumulate: output shape mismatch");
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i) {
      const cxd aij = w * cxd(A(i, j));
      if (aij == cxd(0.0, 0.0)) continue;
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) += aij * B;
    }
}

// ---------- vec / unvec ----------

// Column-stacking vectorization: columns of M concatenated top to bottom.
Vector vec(const Matrix& M);

// Inverse of vec for the given target shape.  Throws if sizes are inconsistent.
Matrix unvec(const Vector& v, Index rows, Index cols);

// ---------- matrix exponential ----------

// expm(A) by scaling-and-squaring with diagonal Padé approximants
// (orders 3/5/7/9/13, order chosen from the 1-norm of A).
// tol is validated (must lie in [1e-15, 1)); approximation order thresholds
// already deliver ~1e-15 backward error, so tol acts as a request guard.
// Throws std::invalid_argument on non-square or non-finite input.
Matrix expm(const Matrix& A, double tol = 1e-13);

// ---------- least squares ----------

// Thrown when the coefficient matrix of a least-squares solve (or any
// downstream fit built on one) has numerically deficient column rank.
class RankDeficientError : public std::runtime_error {
public:
  RankDeficientError(const std::string& what, Index rank, Index cols)
      : std::runtime_error(what), rank_(rank), cols_(cols) {}
  Index rank() const { return rank_; }
  Index cols() const { return cols_; }

private:
  Index rank_;
  Index cols_;
};

// Minimum-norm least-squares solution of M x = y via column-pivoted QR.
// Throws RankDeficientError when rank(M) < cols(M).
Vector lstsq(const Matrix& M, const Vector& y);

// ---------- small helpers ----------

inline double max_abs(const Matrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

inline bool all_finite(const Matrix& M) { return M.allFinite(); }

} // namespace dynaquant
