// test_evolve.cpp — propagators and quantum evolution statistics
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaquant/evolve.hpp"
#include "dynaquant/quantize.hpp"
#include "dynaquant/rng.hpp"

#include <cmath>

using namespace dynaquant;

namespace {

SuperOperator von_neumann(const FockSpacePtr& s) {
  // ∂t ρ = -(i/ħ)[H, ρ]
  Operator H = harmonic_hamiltonian(s);
  return cxd(0.0, -1.0 / s->hbar) * commutator_mult(H);
}

} // namespace

TEST_CASE("propagator validates its inputs and picks sensible substeps") {
  FockSpacePtr s = build_space(6);
  SuperOperator S = von_neumann(s);
  CHECK_THROWS_AS(Propagator(S, 0.0, EvolveMethod::RK4), std::invalid_argument);
  CHECK_THROWS_AS(Propagator(S, -0.1, EvolveMethod::EXPM), std::invalid_argument);

  const double dt = 0.37;
  Propagator rk(S, dt, EvolveMethod::RK4);
  const double norm1 = S.mat.cwiseAbs().colwise().sum().maxCoeff();
  CHECK(rk.substeps() == static_cast<int>(std::ceil(norm1 * dt / 0.1)));
  Propagator ex(S, dt, EvolveMethod::EXPM);
  CHECK(ex.substeps() == 1);
}

TEST_CASE("exponential and Runge-Kutta stepping agree closely") {
  Rng rng(77);
  FockSpacePtr s = build_space(5);
  Matrix G = 0.5 * rng.matrix(25, 25);
  SuperOperator S{s, G};

  Matrix col = rng.matrix(25, 1);
  Matrix a = col, b = col;
  Propagator ex(S, 0.05, EvolveMethod::EXPM);
  Propagator rk(S, 0.05, EvolveMethod::RK4);
  for (int k = 0; k < 20; ++k) {
    ex.step(a);
    rk.step(b);
  }
  // the 0.1-per-substep budget admits fifth-order local errors near 1e-8
  CHECK((a - b).norm() < 1e-7 * a.norm());
}

TEST_CASE("closed oscillator evolution reproduces rotating quadratures") {
  const double hbar = 1.0, m = 1.0, om = 1.0;
  FockSpacePtr s = build_space(30, hbar, m, om);
  Operator rho = coherent_state(s, cxd(1.0, 0.0));
  const double q0 = std::sqrt(2.0 * hbar / (m * om)); // √2 ⟨q⟩ of the α=1 state
  EvolutionResult r = evolve_quantum(von_neumann(s), rho, 0.01, 300);
  REQUIRE(r.times.size() == 301);
  for (std::size_t k = 0; k < r.times.size(); k += 25) {
    const double t = r.times[k];
    CHECK(std::abs(r.mean_q[k] - q0 * std::cos(om * t)) < 1e-8);
    CHECK(std::abs(r.mean_p[k] + m * om * q0 * std::sin(om * t)) < 1e-8);
  }
  // unitary flow preserves trace, hermiticity, purity and energy
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    CHECK(std::abs(r.trace_re[k] - 1.0) < 1e-11);
    CHECK(r.herm_defect[k] < 1e-11);
    CHECK(std::abs(r.purity[k] - r.purity[0]) < 1e-10);
    CHECK(std::abs(r.energy[k] - r.energy[0]) < 1e-10);
  }
  CHECK(r.energy[0] ==
        doctest::Approx(hbar * om * 1.5).epsilon(1e-9)); // |α|² + 1/2 at α = 1
}

TEST_CASE("snapshots are captured on the stride including step zero") {
  FockSpacePtr s = build_space(8);
  Operator rho = coherent_state(s, cxd(0.5, 0.0));
  EvolutionResult r =
      evolve_quantum(von_neumann(s), rho, 0.02, 10, EvolveMethod::EXPM, 3);
  REQUIRE(r.snapshots.size() == 4); // steps 0, 3, 6, 9
  CHECK(r.snapshot_times[0] == 0.0);
  CHECK(r.snapshot_times[3] == doctest::Approx(0.18));
  CHECK((r.snapshots[0].mat - rho.mat).norm() == 0.0);
  for (const Operator& snap : r.snapshots) CHECK(same_space(snap.space, s));

  EvolutionResult none = evolve_quantum(von_neumann(s), rho, 0.02, 10);
  CHECK(none.snapshots.empty());
}

TEST_CASE("evolution is deterministic across repeated runs") {
  FockSpacePtr s = build_space(14);
  SuperOperator S = quantize_qp(s, damped_oscillator_dynop(1.0, 1.0, 0.1));
  Operator rho = coherent_state(s, cxd(1.0, 0.0));
  EvolutionResult a = evolve_quantum(S, rho, 0.01, 40, EvolveMethod::RK4);
  EvolutionResult b = evolve_quantum(S, rho, 0.01, 40, EvolveMethod::RK4);
  REQUIRE(a.mean_q.size() == b.mean_q.size());
  for (std::size_t k = 0; k < a.mean_q.size(); ++k) {
    CHECK(a.mean_q[k] == b.mean_q[k]);
    CHECK(a.purity[k] == b.purity[k]);
  }
}

TEST_CASE("evolution rejects inconsistent inputs") {
  FockSpacePtr s = build_space(6);
  FockSpacePtr other = build_space(6, 0.5);
  Operator rho = coherent_state(s, cxd(0.3, 0.0));
  SuperOperator S = von_neumann(other);
  CHECK_THROWS_AS(evolve_quantum(S, rho, 0.01, 5), std::invalid_argument);
  CHECK_THROWS_AS(evolve_quantum(von_neumann(s), rho, 0.01, -2), std::invalid_argument);
}
