// test_linalg.cpp — kron, vec/unvec, expm and least-squares oracles
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaquant/rng.hpp"
#include "support.hpp"

using namespace dynaquant;
using testsupport::expm_taylor;
using testsupport::rel_err;

TEST_CASE("kron indexing matches the defining formula") {
  Rng rng(11);
  Matrix A = rng.matrix(2, 3), B = rng.matrix(3, 2);
  Matrix K = kron(A, B);
  REQUIRE(K.rows() == 6);
  REQUIRE(K.cols() == 6);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 3; ++k)
        for (Index l = 0; l < 2; ++l)
          // last-bit slack: the compiler may fuse the complex product differently
          CHECK(std::abs(K(i * 3 + k, j * 2 + l) - A(i, j) * B(k, l)) < 1e-15);
}

TEST_CASE("kron accepts real factors") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 2, 3, 4;
  Matrix B = Matrix::Identity(2, 2);
  Matrix K = kron(A, B);
  CHECK(K(0, 0) == cxd(1.0, 0.0));
  CHECK(K(2, 2) == cxd(4.0, 0.0)); // block (1,1) carries A(1,1)
  CHECK(K(1, 0) == cxd(0.0, 0.0));
}

TEST_CASE("kron mixed product rule") {
  Rng rng(12);
  Matrix A = rng.matrix(3, 3), B = rng.matrix(4, 4);
  Matrix C = rng.matrix(3, 3), D = rng.matrix(4, 4);
  CHECK(rel_err(kron(A, B) * kron(C, D), kron((A * C).eval(), (B * D).eval())) < 1e-14);
}

TEST_CASE("vec stacks columns top to bottom") {
  Matrix M(2, 2);
  M << cxd(1, 0), cxd(3, 0), cxd(2, 0), cxd(4, 0);
  Vector v = vec(M);
  CHECK(v[0] == cxd(1, 0));
  CHECK(v[1] == cxd(2, 0));
  CHECK(v[2] == cxd(3, 0));
  CHECK(v[3] == cxd(4, 0));
  CHECK((unvec(v, 2, 2) - M).norm() == 0.0);
  CHECK_THROWS_AS(unvec(v, 3, 2), std::invalid_argument);
}

TEST_CASE("vec intertwines sandwich products with Kronecker factors") {
  Rng rng(13);
  Matrix A = rng.matrix(4, 4), B = rng.matrix(4, 4), X = rng.matrix(4, 4);
  Vector lhs = vec((A * X * B).eval());
  Vector rhs = kron(B.transpose().eval(), A) * vec(X);
  CHECK((lhs - rhs).norm() / lhs.norm() < 1e-14);
}

TEST_CASE("expm agrees with a Taylor-series oracle across norm regimes") {
  Rng rng(14);
  for (double scale : {0.01, 0.2, 1.0, 6.0, 40.0}) {
    Matrix A = rng.matrix(12, 12, scale / 12.0);
    CAPTURE(scale);
    CHECK(rel_err(expm(A), expm_taylor(A)) < 1e-12);
  }
}

TEST_CASE("expm structural identities") {
  Rng rng(15);
  const Matrix Z = Matrix::Zero(5, 5);
  CHECK((expm(Z) - Matrix::Identity(5, 5)).norm() == 0.0);

  Matrix Dg = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) Dg(k, k) = cxd(-1.0 + k, 0.5 * k);
  Matrix E = expm(Dg);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(E(k, k) - std::exp(Dg(k, k))) < 1e-14);

  Matrix A = rng.matrix(8, 8, 0.5);
  CHECK(rel_err(expm(A) * expm((-A).eval()), Matrix::Identity(8, 8)) < 1e-12);

  Matrix N = Matrix::Zero(3, 3); // nilpotent: series terminates
  N(0, 1) = 2.0;
  N(1, 2) = -1.0;
  Matrix want = Matrix::Identity(3, 3) + N + 0.5 * (N * N);
  CHECK((expm(N) - want).norm() < 1e-14);
}

TEST_CASE("expm of a skew-Hermitian generator is unitary") {
  Rng rng(16);
  Matrix H = rng.hermitian(10, 2.0);
  Matrix U = expm((cxd(0.0, 1.0) * H).eval());
  CHECK(rel_err(U.adjoint() * U, Matrix::Identity(10, 10)) < 1e-12);
}

TEST_CASE("expm input validation") {
  Rng rng(17);
  CHECK_THROWS_AS(expm(rng.matrix(3, 4)), std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(expm(bad), std::invalid_argument);
  Matrix ok = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(expm(ok, 1e-16), std::invalid_argument);
  CHECK_THROWS_AS(expm(ok, 1.0), std::invalid_argument);
}

TEST_CASE("lstsq recovers consistent systems and flags deficiency") {
  Rng rng(18);
  Matrix M = rng.matrix(8, 3);
  Vector x0 = rng.matrix(3, 1).col(0);
  Vector x = lstsq(M, (M * x0).eval());
  CHECK((x - x0).norm() < 1e-12);

  Vector y = rng.matrix(8, 1).col(0);
  Vector xs = lstsq(M, y);
  // normal equations: the residual is orthogonal to the column space
  CHECK((M.adjoint() * (M * xs - y)).norm() < 1e-12 * y.norm());

  Matrix D(6, 3);
  D.col(0) = rng.matrix(6, 1).col(0);
  D.col(1) = D.col(0);
  D.col(2) = rng.matrix(6, 1).col(0);
  try {
    lstsq(D, y.head(6).eval());
    FAIL("expected RankDeficientError");
  } catch (const RankDeficientError& e) {
    CHECK(e.rank() == 2);
    CHECK(e.cols() == 3);
  }
}

TEST_CASE("max_abs and all_finite") {
  Matrix M(2, 2);
  M << cxd(1, 0), cxd(0, -3), cxd(0.5, 0), cxd(2, 0);
  CHECK(max_abs(M) == 3.0);
  CHECK(all_finite(M));
  M(1, 1) = std::numeric_limits<double>::infinity();
  CHECK(!all_finite(M));
}
