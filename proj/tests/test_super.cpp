// test_super.cpp — superoperator construction, pairing, windowed norms
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaquant/liouville.hpp"
#include "dynaquant/rng.hpp"
#include "support.hpp"

using namespace dynaquant;
using testsupport::expm_taylor;

TEST_CASE("left and right multiplication act as advertised") {
  Rng rng(31);
  FockSpacePtr s = build_space(6);
  Operator A{s, rng.matrix(6, 6)}, X{s, rng.matrix(6, 6)};
  // product recomputed here may fuse differently than inside the library
  CHECK((apply(left_mult(A), X).mat - A.mat * X.mat).norm() < 1e-14);
  CHECK((apply(right_mult(A), X).mat - X.mat * A.mat).norm() < 1e-14);
  CHECK((apply(jordan_mult(A), X).mat - 0.5 * (A.mat * X.mat + X.mat * A.mat)).norm() < 1e-14);
  CHECK((apply(commutator_mult(A), X).mat - (A.mat * X.mat - X.mat * A.mat)).norm() < 1e-14);
}

TEST_CASE("identity and zero superoperators") {
  Rng rng(32);
  FockSpacePtr s = build_space(5);
  Operator X{s, rng.matrix(5, 5)};
  CHECK((apply(identity_super(s), X).mat - X.mat).norm() == 0.0);
  CHECK(apply(zero_super(s), X).mat.norm() == 0.0);
}

TEST_CASE("coordinate superoperators embed the quadratures, momenta kill the identity") {
  FockSpacePtr s = build_space(10, 0.5, 2.0, 1.5);
  Operator I = identity_op(s);
  CHECK((apply(q_super(s, 1), I).mat - s->q).norm() == 0.0);
  CHECK((apply(q_super(s, 2), I).mat - s->p).norm() == 0.0);
  CHECK(apply(p_super(s, 1), I).mat.norm() == 0.0);
  CHECK(apply(p_super(s, 2), I).mat.norm() == 0.0);
  CHECK_THROWS_AS(q_super(s, 3), std::invalid_argument);
  CHECK_THROWS_AS(p_super(s, 0), std::invalid_argument);
}

TEST_CASE("momentum superoperators scale commutators with 1/hbar") {
  Rng rng(33);
  const double hbar = 0.25;
  FockSpacePtr s = build_space(8, hbar);
  Operator X{s, rng.matrix(8, 8)};
  Matrix want1 = (s->p * X.mat - X.mat * s->p) / hbar;
  Matrix want2 = -(s->q * X.mat - X.mat * s->q) / hbar;
  CHECK((apply(p_super(s, 1), X).mat - want1).norm() < 1e-13);
  CHECK((apply(p_super(s, 2), X).mat - want2).norm() < 1e-13);
}

TEST_CASE("canonical commutation pairs hold on interior operands") {
  FockSpacePtr s = build_space(24);
  const Index n2 = 24 * 24;
  Operator Pi = interior_projector(s);
  Matrix Q1 = q_super(s, 1).mat, Q2 = q_super(s, 2).mat;
  Matrix P1 = p_super(s, 1).mat, P2 = p_super(s, 2).mat;
  auto comm = [](const Matrix& X, const Matrix& Y) { return (X * Y - Y * X).eval(); };
  const Matrix Id2 = Matrix::Identity(n2, n2);
  CHECK(operand_window_norm(comm(Q1, P1) - cxd(0, 1) * Id2, Pi.mat) < 1e-11);
  CHECK(operand_window_norm(comm(Q2, P2) - cxd(0, 1) * Id2, Pi.mat) < 1e-11);
  CHECK(operand_window_norm(comm(Q1, P2), Pi.mat) < 1e-11);
  CHECK(operand_window_norm(comm(Q1, Q2), Pi.mat) < 1e-11);
  CHECK(operand_window_norm(comm(P1, P2), Pi.mat) < 1e-13);
  // the momentum-momentum defect is a pure boundary object
  CHECK(comm(P1, P2).norm() > 1.0);
}

TEST_CASE("lifted displacement: factorized form equals the exponentiated generator") {
  FockSpacePtr s = build_space(9, 0.7);
  const std::array<double, 2> a{0.3, -0.2}, b{0.1, 0.25};
  Matrix gen = cxd(0.0, 1.0) * (a[0] * q_super(s, 1).mat + a[1] * q_super(s, 2).mat +
                                b[0] * p_super(s, 1).mat + b[1] * p_super(s, 2).mat);
  CHECK((v_super(s, a, b).mat - expm_taylor(gen)).norm() < 1e-12);
  // the generator is i times a Hermitian superoperator, so V is unitary
  Matrix V = v_super(s, a, b).mat;
  CHECK((V.adjoint() * V - Matrix::Identity(81, 81)).norm() < 1e-12);
  CHECK((v_super(s, {-a[0], -a[1]}, {-b[0], -b[1]}).mat - V.adjoint()).norm() < 1e-12);
}

TEST_CASE("pairing adjoint and conjugation symmetry") {
  Rng rng(34);
  FockSpacePtr s = build_space(7);
  Operator A{s, rng.matrix(7, 7)}, B{s, rng.matrix(7, 7)};
  SuperOperator S = q_super(s, 1) + cxd(0.0, 1.0) * p_super(s, 2);
  cxd lhs = hs_inner(A, apply(S, B));
  cxd rhs = hs_inner(apply(superop_adjoint(S), A), B);
  CHECK(std::abs(lhs - rhs) < 1e-12 * A.mat.norm() * B.mat.norm());

  Operator X{s, rng.matrix(7, 7)};
  CHECK((adjoint(apply(q_super(s, 1), X)).mat - apply(q_super(s, 1), adjoint(X)).mat).norm() <
        1e-13);
  CHECK((adjoint(apply(p_super(s, 1), X)).mat + apply(p_super(s, 1), adjoint(X)).mat).norm() <
        1e-13);
}

TEST_CASE("operand restriction and windowed norm agree with explicit Kronecker masks") {
  Rng rng(35);
  FockSpacePtr s = build_space(6);
  SuperOperator S{s, rng.matrix(36, 36)};
  Operator P = interior_projector(s, 3);
  Matrix mask = kron(P.mat.transpose().eval(), P.mat);
  CHECK((operand_restriction(S, P).mat - S.mat * mask).norm() < 1e-13);
  double direct = (S.mat * mask).norm();
  CHECK(operand_window_norm(S, P) == doctest::Approx(direct).epsilon(1e-13));
  CHECK_THROWS_AS(operand_window_norm(rng.matrix(36, 30), P.mat), std::invalid_argument);
}

TEST_CASE("superoperator arithmetic guards spaces") {
  FockSpacePtr a = build_space(4), b = build_space(5);
  CHECK_THROWS_AS(q_super(a, 1) + q_super(b, 1), std::invalid_argument);
  CHECK_THROWS_AS(q_super(a, 1) * q_super(b, 1), std::invalid_argument);
  CHECK_THROWS_AS(apply(q_super(a, 1), identity_op(b)), std::invalid_argument);
  CHECK_THROWS_AS(hs_inner(identity_op(a), identity_op(b)), std::invalid_argument);
}

TEST_CASE("composition matrix equals nested application") {
  Rng rng(36);
  FockSpacePtr s = build_space(6);
  SuperOperator A = q_super(s, 1), B = p_super(s, 2);
  Operator X{s, rng.matrix(6, 6)};
  CHECK((apply(A * B, X).mat - apply(A, apply(B, X)).mat).norm() < 1e-13);
}
