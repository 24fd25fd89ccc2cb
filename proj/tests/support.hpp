// support.hpp — shared oracles and helpers for the test suite
#pragma once

#include "dynaquant/linalg.hpp"

namespace dynaquant::testsupport {

// Independent matrix-exponential oracle: scaling-and-squaring with a plain
// Taylor series run to machine-precision stagnation.  Deliberately shares no
// code with the library's Padé implementation.
inline Matrix expm_taylor(const Matrix& A) {
  const Index n = A.rows();
  const double nrm = A.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  while (nrm * std::pow(0.5, s) > 0.5) ++s;
  const Matrix B = A * std::pow(0.5, s);
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  for (int k = 1; k <= 60; ++k) {
    term = (term * B) / double(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

inline double rel_err(const Matrix& got, const Matrix& want) {
  const double scale = std::max(1e-300, want.norm());
  return (got - want).norm() / scale;
}

} // namespace dynaquant::testsupport
