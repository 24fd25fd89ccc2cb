// rng.hpp — deterministic random draws for tests and self-checks
#pragma once

#include "dynaquant/linalg.hpp"

#include <cstdint>
#include <random>

namespace dynaquant {

// Seeded Mersenne Twister with a fixed bits-to-double recipe so that the same
// seed reproduces the same stream bit-for-bit on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  cxd complex_uniform(double scale = 1.0) {
    double re = uniform(-scale, scale);
    double im = uniform(-scale, scale);
    return {re, im};
  }

  // Dense matrix with i.i.d. complex entries, each component uniform in [-scale, scale).
  Matrix matrix(Index rows, Index cols, double scale = 1.0) {
    Matrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) M(i, j) = complex_uniform(scale);
    return M;
  }

  Matrix hermitian(Index n, double scale = 1.0) {
    Matrix M = matrix(n, n, scale);
    return 0.5 * (M + M.adjoint().eval());
  }

private:
  std::mt19937_64 eng_;
};

} // namespace dynaquant
