// linalg.cpp — vec/unvec, Padé expm, least squares
#include "dynaquant/linalg.hpp"

#include <cmath>

namespace dynaquant {

// ---------- vec / unvec ----------

Vector vec(const Matrix& M) {
  Vector v(M.size());
  Index k = 0;
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i) v[k++] = M(i, j);
  return v;
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols)
    throw std::invalid_argument("unvec: length does not match requested shape");
  Matrix M(rows, cols);
  Index k = 0;
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = v[k++];
  return M;
}

// ---------- expm ----------

namespace {

// Padé numerator coefficients for orders 3..13.
const double kB3[] = {120.0, 60.0, 12.0, 1.0};
const double kB5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
const double kB7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
const double kB9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                      2162160.0,     110880.0,     3960.0,       90.0,        1.0};
const double kB13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                       1187353796428800.0,  129060195264000.0,   10559470521600.0,
                       670442572800.0,      33522128640.0,       1323241920.0,
                       40840800.0,          960960.0,            16380.0,
                       182.0,               1.0};

// 1-norm thresholds below which each Padé order meets double-precision
// backward error (Higham's scaling-and-squaring analysis).
const double kTheta3 = 1.495585217958292e-2;
const double kTheta5 = 2.539398330063230e-1;
const double kTheta7 = 9.504178996162932e-1;
const double kTheta9 = 2.097847961257068e0;
const double kTheta13 = 5.371920351148152e0;

Matrix pade_solve(const Matrix& U, const Matrix& V) {
  // r = (V - U)^{-1} (V + U)
  return (V - U).partialPivLu().solve(V + U);
}

Matrix pade_low(const Matrix& A, const double* b, int m) {
  const Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  if (m == 3) {
    Matrix U = A * (b[3] * A2 + b[1] * I);
    Matrix V = b[2] * A2 + b[0] * I;
    return pade_solve(U, V);
  }
  const Matrix A4 = A2 * A2;
  if (m == 5) {
    Matrix U = A * (b[5] * A4 + b[3] * A2 + b[1] * I);
    Matrix V = b[4] * A4 + b[2] * A2 + b[0] * I;
    return pade_solve(U, V);
  }
  const Matrix A6 = A4 * A2;
  if (m == 7) {
    Matrix U = A * (b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    Matrix V = b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
    return pade_solve(U, V);
  }
  const Matrix A8 = A6 * A2;
  Matrix U = A * (b[9] * A8 + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  Matrix V = b[8] * A8 + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  return pade_solve(U, V);
}

Matrix pade13(const Matrix& A) {
  const double* b = kB13;
  const Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A4 * A2;
  Matrix U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                  b[3] * A2 + b[1] * I);
  Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 +
             b[0] * I;
  return pade_solve(U, V);
}

} // namespace

Matrix expm(const Matrix& A, double tol) {
  if (A.rows() != A.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (!all_finite(A)) throw std::invalid_argument("expm: matrix has non-finite entries");
  if (!(tol >= 1e-15) || !(tol < 1.0))
    throw std::invalid_argument("expm: tol must lie in [1e-15, 1)");
  if (A.size() == 0) return Matrix(0, 0);

  const double nrm = A.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
  if (nrm <= kTheta3) return pade_low(A, kB3, 3);
  if (nrm <= kTheta5) return pade_low(A, kB5, 5);
  if (nrm <= kTheta7) return pade_low(A, kB7, 7);
  if (nrm <= kTheta9) return pade_low(A, kB9, 9);

  int s = 0;
  double scaled = nrm;
  while (scaled > kTheta13) {
    scaled *= 0.5;
    ++s;
  }
  Matrix R = pade13(A * std::pow(2.0, -s));
  for (int k = 0; k < s; ++k) R = R * R;
  return R;
}

// ---------- least squares ----------

Vector lstsq(const Matrix& M, const Vector& y) {
  if (M.rows() != y.size())
    throw std::invalid_argument("lstsq: matrix rows and rhs length disagree");
  Eigen::ColPivHouseholderQR<Matrix> qr(M);
  if (qr.rank() < M.cols())
    throw RankDeficientError("lstsq: coefficient matrix is rank deficient", qr.rank(), M.cols());
  return qr.solve(y);
}

} // namespace dynaquant
