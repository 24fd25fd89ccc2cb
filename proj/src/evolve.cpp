// evolve.cpp — time propagation of operators under a superoperator generator
#include "dynaquant/evolve.hpp"

#include <cmath>

namespace dynaquant {

Propagator::Propagator(const SuperOperator& S, double dt, EvolveMethod method)
    : space_(S.space), method_(method) {
  if (!(dt > 0.0)) throw std::invalid_argument("Propagator: dt must be > 0");
  if (method_ == EvolveMethod::EXPM) {
    mat_ = expm(S.mat * dt);
    return;
  }
  const double nrm = S.mat.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
  double m = std::ceil(nrm * dt / 0.1);
  if (m < 1.0) m = 1.0;
  if (m > 1e6)
    throw std::invalid_argument("Propagator: RK4 substep guard exceeded (generator too stiff)");
  substeps_ = static_cast<int>(m);
  h_ = dt / substeps_;
  mat_ = S.mat;
}

void Propagator::step(Matrix& cols) const {
  if (method_ == EvolveMethod::EXPM) {
    cols = mat_ * cols;
    return;
  }
  for (int s = 0; s < substeps_; ++s) {
    Matrix k1 = mat_ * cols;
    Matrix k2 = mat_ * (cols + (0.5 * h_) * k1);
    Matrix k3 = mat_ * (cols + (0.5 * h_) * k2);
    Matrix k4 = mat_ * (cols + h_ * k3);
    cols += (h_ / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

EvolutionResult evolve_quantum(const SuperOperator& S, const Operator& X0, double dt, int steps,
                               EvolveMethod method, int snapshot_stride) {
  if (!same_space(S.space, X0.space))
    throw std::invalid_argument("evolve_quantum: generator and initial operator spaces differ");
  if (steps < 0) throw std::invalid_argument("evolve_quantum: steps must be >= 0");

  const FockSpacePtr& s = S.space;
  const int n = s->dim;
  const Matrix& q = s->q;
  const Matrix& p = s->p;
  const Matrix q2 = q * q, p2 = p * p;
  const Matrix qp_sym = 0.5 * (q * p + p * q);
  const Matrix H = harmonic_hamiltonian(*s, s->mass, s->omega * s->omega);

  Propagator prop(S, dt, method);
  Matrix cols = vec(X0.mat);

  EvolutionResult out;
  auto record = [&](int step) {
    Matrix X = unvec(cols, n, n);
    const double t = step * dt;
    auto expect = [&X](const Matrix& O) { return (X * O).trace().real(); };
    const double mq = expect(q), mp = expect(p);
    out.times.push_back(t);
    out.trace_re.push_back(X.trace().real());
    out.herm_defect.push_back((X - X.adjoint().eval()).norm());
    out.mean_q.push_back(mq);
    out.mean_p.push_back(mp);
    out.var_qq.push_back(expect(q2) - mq * mq);
    out.var_pp.push_back(expect(p2) - mp * mp);
    out.cov_qp.push_back(expect(qp_sym) - mq * mp);
    out.energy.push_back(expect(H));
    out.purity.push_back((X * X).trace().real());
    if (snapshot_stride > 0 && step % snapshot_stride == 0) {
      out.snapshot_times.push_back(t);
      out.snapshots.push_back({s, X});
    }
  };
  record(0);
  for (int k = 1; k <= steps; ++k) {
    prop.step(cols);
    record(k);
  }
  return out;
}

} // namespace dynaquant
