// phasegrid.cpp — grid calculus and classical evolution
#include "dynaquant/phasegrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dynaquant {

// ---------- grids ----------

PhaseGrid make_grid(double q_min, double q_max, double p_min, double p_max, int nq, int np) {
  if (!(q_max > q_min) || !(p_max > p_min))
    throw std::invalid_argument("make_grid: box must have positive extent");
  if (nq < 8 || np < 8)
    throw std::invalid_argument("make_grid: need at least 8 points per axis");
  return PhaseGrid{q_min, q_max, p_min, p_max, nq, np};
}

static void require_same_grid(const GridSymbol& a, const GridSymbol& b, const char* who) {
  const PhaseGrid &g = a.grid, &h = b.grid;
  if (g.q_min != h.q_min || g.q_max != h.q_max || g.p_min != h.p_min || g.p_max != h.p_max ||
      g.nq != h.nq || g.np != h.np)
    throw std::invalid_argument(std::string(who) + ": grids differ");
}

GridSymbol sample(const PhaseGrid& g, const std::function<cxd(double, double)>& f) {
  GridSymbol s{g, Matrix(g.nq, g.np)};
  for (int j = 0; j < g.np; ++j)
    for (int i = 0; i < g.nq; ++i) s.values(i, j) = f(g.q(i), g.p(j));
  return s;
}

GridSymbol constant_symbol(const PhaseGrid& g, cxd value) {
  return GridSymbol{g, Matrix::Constant(g.nq, g.np, value)};
}

GridSymbol gaussian_symbol(const PhaseGrid& g, double q0, double p0, double sigma_q,
                           double sigma_p) {
  if (!(sigma_q > 0.0) || !(sigma_p > 0.0))
    throw std::invalid_argument("gaussian_symbol: widths must be > 0");
  const double norm = 1.0 / (2.0 * std::numbers::pi * sigma_q * sigma_p);
  return sample(g, [=](double q, double p) {
    double xq = (q - q0) / sigma_q, xp = (p - p0) / sigma_p;
    return cxd(norm * std::exp(-0.5 * (xq * xq + xp * xp)), 0.0);
  });
}

GridSymbol operator+(const GridSymbol& a, const GridSymbol& b) {
  require_same_grid(a, b, "GridSymbol operator+");
  return GridSymbol{a.grid, a.values + b.values};
}

GridSymbol operator-(const GridSymbol& a, const GridSymbol& b) {
  require_same_grid(a, b, "GridSymbol operator-");
  return GridSymbol{a.grid, a.values - b.values};
}

GridSymbol operator*(cxd c, const GridSymbol& s) { return GridSymbol{s.grid, c * s.values}; }

// ---------- finite differences ----------

namespace {

// Weights w reproducing f^(d)(x0) = (1/h^d) Σ_j w_j f(x0 + offsets_j h) for
// polynomials up to degree n-1: solve Σ_j offsets_j^m w_j = d! δ_{m,d}.
std::vector<double> stencil_weights(const std::vector<int>& offsets, int d) {
  const int n = static_cast<int>(offsets.size());
  Eigen::MatrixXd V(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) V(m, j) = std::pow(double(offsets[j]), m);
  double dfact = 1.0;
  for (int k = 2; k <= d; ++k) dfact *= k;
  rhs[d] = dfact;
  Eigen::VectorXd w = V.fullPivLu().solve(rhs);
  return {w.data(), w.data() + n};
}

struct AxisStencils {
  // rows[i] = (first offset index, weights) applicable at line position i.
  std::vector<int> starts;
  std::vector<std::vector<double>> weights;
};

// Stencil table for derivative order d (1 or 2) along a line of length n.
// Interior: centered 5 points.  Edges: one-sided 5 points (d=1) or 6 points
// (d=2), keeping fourth-order accuracy throughout.
AxisStencils build_axis_stencils(int n, int d) {
  const int w = (d == 1) ? 5 : 6;
  const int half = 2; // interior center offset range [-2, 2]
  AxisStencils out;
  out.starts.resize(n);
  out.weights.resize(n);
  std::vector<int> central{-2, -1, 0, 1, 2};
  std::vector<double> wc = stencil_weights(central, d);
  for (int i = 0; i < n; ++i) {
    if (i >= half && i < n - half) {
      out.starts[i] = i - 2;
      out.weights[i] = wc;
    } else {
      int start = std::clamp(i - (w - 1) / 2, 0, n - w);
      std::vector<int> offs(w);
      for (int k = 0; k < w; ++k) offs[k] = start + k - i;
      out.starts[i] = start;
      out.weights[i] = stencil_weights(offs, d);
    }
  }
  return out;
}

// Derivative along axis 0 (q, rows) or axis 1 (p, cols).
Matrix deriv_axis(const Matrix& F, int axis, int d, double h) {
  const int n = static_cast<int>(axis == 0 ? F.rows() : F.cols());
  AxisStencils st = build_axis_stencils(n, d);
  Matrix out = Matrix::Zero(F.rows(), F.cols());
  const double scale = 1.0 / std::pow(h, d);
  if (axis == 0) {
    for (int i = 0; i < n; ++i) {
      const auto& w = st.weights[i];
      for (int k = 0; k < static_cast<int>(w.size()); ++k)
        out.row(i) += (w[k] * scale) * F.row(st.starts[i] + k);
    }
  } else {
    for (int j = 0; j < n; ++j) {
      const auto& w = st.weights[j];
      for (int k = 0; k < static_cast<int>(w.size()); ++k)
        out.col(j) += (w[k] * scale) * F.col(st.starts[j] + k);
    }
  }
  return out;
}

} // namespace

GridSymbol deriv(const GridSymbol& f, int dq_order, int dp_order) {
  if (dq_order < 0 || dp_order < 0 || dq_order > 2 || dp_order > 2)
    throw std::invalid_argument("deriv: derivative order per axis must be 0, 1 or 2");
  Matrix F = f.values;
  if (dq_order > 0) F = deriv_axis(F, 0, dq_order, f.grid.dq());
  if (dp_order > 0) F = deriv_axis(F, 1, dp_order, f.grid.dp());
  return GridSymbol{f.grid, F};
}

GridSymbol apply_dynop_grid(const DynOperator& L, const GridSymbol& f) {
  if (L.form != DynForm::QP)
    throw std::invalid_argument("apply_dynop_grid: QP ordering required");
  GridSymbol acc = constant_symbol(f.grid, 0.0);
  for (const DynTerm& t : L.terms) {
    if (t.dqpow > 2 || t.dppow > 2)
      throw std::invalid_argument("apply_dynop_grid: derivative order per axis above 2");
    GridSymbol g = deriv(f, t.dqpow, t.dppow);
    if (t.qpow > 0 || t.ppow > 0) {
      for (int j = 0; j < f.grid.np; ++j)
        for (int i = 0; i < f.grid.nq; ++i)
          g.values(i, j) *=
              std::pow(f.grid.q(i), t.qpow) * std::pow(f.grid.p(j), t.ppow);
    }
    acc.values += t.coeff * g.values;
  }
  return acc;
}

GridSymbol poisson_bracket_grid(const GridSymbol& a, const GridSymbol& b) {
  require_same_grid(a, b, "poisson_bracket_grid");
  Matrix aq = deriv(a, 1, 0).values, ap = deriv(a, 0, 1).values;
  Matrix bq = deriv(b, 1, 0).values, bp = deriv(b, 0, 1).values;
  return GridSymbol{a.grid, aq.cwiseProduct(bp) - ap.cwiseProduct(bq)};
}

// ---------- moments ----------

GridMoments grid_moments(const GridSymbol& f) {
  const PhaseGrid& g = f.grid;
  Eigen::VectorXd wq = Eigen::VectorXd::Constant(g.nq, g.dq());
  Eigen::VectorXd wp = Eigen::VectorXd::Constant(g.np, g.dp());
  wq[0] *= 0.5;
  wq[g.nq - 1] *= 0.5;
  wp[0] *= 0.5;
  wp[g.np - 1] *= 0.5;
  double mass = 0, mq = 0, mp = 0, sqq = 0, spp = 0, sqp = 0;
  for (int j = 0; j < g.np; ++j)
    for (int i = 0; i < g.nq; ++i) {
      double w = wq[i] * wp[j] * f.values(i, j).real();
      mass += w;
      mq += w * g.q(i);
      mp += w * g.p(j);
    }
  GridMoments m;
  m.mass = mass;
  if (mass == 0.0) return m;
  m.mean_q = mq / mass;
  m.mean_p = mp / mass;
  for (int j = 0; j < g.np; ++j)
    for (int i = 0; i < g.nq; ++i) {
      double w = wq[i] * wp[j] * f.values(i, j).real();
      double dqc = g.q(i) - m.mean_q, dpc = g.p(j) - m.mean_p;
      sqq += w * dqc * dqc;
      spp += w * dpc * dpc;
      sqp += w * dqc * dpc;
    }
  m.var_qq = sqq / mass;
  m.var_pp = spp / mass;
  m.cov_qp = sqp / mass;
  return m;
}

// ---------- classical evolution ----------

namespace {

// Largest advection speed and diffusion coefficient of L over the grid box.
void stability_extremes(const DynOperator& L, const PhaseGrid& g, double& max_speed,
                        double& max_diff) {
  max_speed = 0.0;
  max_diff = 0.0;
  const double qa = std::max(std::abs(g.q_min), std::abs(g.q_max));
  const double pa = std::max(std::abs(g.p_min), std::abs(g.p_max));
  for (const DynTerm& t : L.terms) {
    const double amp = std::abs(t.coeff) * std::pow(qa, t.qpow) * std::pow(pa, t.ppow);
    const int dtot = t.dqpow + t.dppow;
    if (dtot == 1) max_speed = std::max(max_speed, amp);
    if (dtot == 2) max_diff = std::max(max_diff, amp);
  }
}

} // namespace

ClassicalEvolution evolve_classical(const DynOperator& L, const GridSymbol& f0, double dt,
                                    int steps, int snapshot_stride) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_classical: dt must be > 0");
  if (steps < 0) throw std::invalid_argument("evolve_classical: steps must be >= 0");

  const double h = std::min(f0.grid.dq(), f0.grid.dp());
  double max_speed = 0, max_diff = 0;
  stability_extremes(L, f0.grid, max_speed, max_diff);
  if (max_speed > 0.0 && dt > 0.5 * h / max_speed)
    throw std::invalid_argument("evolve_classical: dt violates advective stability guard");
  if (max_diff > 0.0 && dt > 0.25 * h * h / max_diff)
    throw std::invalid_argument("evolve_classical: dt violates diffusive stability guard");

  ClassicalEvolution out;
  GridSymbol f = f0;
  auto record = [&](int step) {
    out.times.push_back(step * dt);
    out.moments.push_back(grid_moments(f));
    if (snapshot_stride > 0 && step % snapshot_stride == 0) {
      out.snapshot_times.push_back(step * dt);
      out.snapshots.push_back(f);
    }
  };
  record(0);
  for (int s = 1; s <= steps; ++s) {
    GridSymbol k1 = apply_dynop_grid(L, f);
    GridSymbol k2 = apply_dynop_grid(L, f + cxd(0.5 * dt) * k1);
    GridSymbol k3 = apply_dynop_grid(L, f + cxd(0.5 * dt) * k2);
    GridSymbol k4 = apply_dynop_grid(L, f + cxd(dt) * k3);
    f.values += (dt / 6.0) * (k1.values + 2.0 * k2.values + 2.0 * k3.values + k4.values);
    record(s);
  }
  return out;
}

} // namespace dynaquant
