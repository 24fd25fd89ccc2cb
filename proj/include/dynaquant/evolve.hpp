// evolve.hpp — time propagation of operators under a superoperator generator
#pragma once

#include "dynaquant/liouville.hpp"

#include <vector>

namespace dynaquant {

enum class EvolveMethod { EXPM, RK4 };

// Advances column-stacked operators by a fixed time step.
// EXPM precomputes exp(S·dt) once and applies it per step (exact up to the
// exponential's accuracy).  RK4 integrates with automatic substepping chosen
// so that ‖S‖₁·h ≤ 0.1 per substep; the substep count is capped at 10⁶.
class Propagator {
public:
  Propagator(const SuperOperator& S, double dt, EvolveMethod method);

  // cols: dim² × k matrix of vec'd operators, advanced in place by dt.
  void step(Matrix& cols) const;

  EvolveMethod method() const { return method_; }
  int substeps() const { return substeps_; }
  const FockSpacePtr& space() const { return space_; }

private:
  FockSpacePtr space_;
  EvolveMethod method_;
  Matrix mat_;      // exp(S dt) for EXPM, S itself for RK4
  double h_ = 0.0;  // RK4 substep size
  int substeps_ = 1;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> trace_re, herm_defect;
  std::vector<double> mean_q, mean_p, var_qq, var_pp, cov_qp;
  std::vector<double> energy, purity;
  std::vector<double> snapshot_times;
  std::vector<Operator> snapshots;
};

// Integrate ∂t X = S X from X0 over `steps` steps of size dt, recording the
// quadrature statistics of X at every step (row 0 is the initial condition).
// Means and variances are plain traces against the space quadratures, energy
// uses the space's oscillator Hamiltonian.  snapshot_stride > 0 stores X
// every that many steps.
EvolutionResult evolve_quantum(const SuperOperator& S, const Operator& X0, double dt, int steps,
                               EvolveMethod method = EvolveMethod::EXPM,
                               int snapshot_stride = 0);

} // namespace dynaquant
