// phasegrid.hpp — phase-space grids, finite-difference calculus, classical evolution
#pragma once

#include "dynaquant/symbols.hpp"

#include <functional>
#include <vector>

namespace dynaquant {

// ---------- grids ----------

// Uniform rectangular grid on [q_min,q_max] × [p_min,p_max], endpoints included.
struct PhaseGrid {
  double q_min = -1, q_max = 1, p_min = -1, p_max = 1;
  int nq = 8, np = 8;

  double dq() const { return (q_max - q_min) / (nq - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double q(int i) const { return q_min + i * dq(); }
  double p(int j) const { return p_min + j * dp(); }
};

// Validated constructor; boundary stencils need at least 8 points per axis.
PhaseGrid make_grid(double q_min, double q_max, double p_min, double p_max, int nq, int np);

// Function sampled on a grid: values(i, j) = f(q_i, p_j).
struct GridSymbol {
  PhaseGrid grid;
  Matrix values;
};

GridSymbol sample(const PhaseGrid& g, const std::function<cxd(double, double)>& f);
GridSymbol constant_symbol(const PhaseGrid& g, cxd value);

// Normalized Gaussian bump (unit mass in the continuum, axis-aligned).
GridSymbol gaussian_symbol(const PhaseGrid& g, double q0, double p0, double sigma_q,
                           double sigma_p);

GridSymbol operator+(const GridSymbol& a, const GridSymbol& b);
GridSymbol operator-(const GridSymbol& a, const GridSymbol& b);
GridSymbol operator*(cxd c, const GridSymbol& s);

// ---------- finite differences ----------

// Fourth-order finite-difference derivative ∂q^dq_order ∂p^dp_order f.
// Central five-point stencils inside, one-sided stencils of the same order at
// the edges.  Orders up to 2 per axis.
GridSymbol deriv(const GridSymbol& f, int dq_order, int dp_order);

// Apply a QP-ordered dynamical operator term by term:
// coeff q^a p^b ∂q^c ∂p^d f  →  coeff q^a p^b (∂q^c ∂p^d f).
GridSymbol apply_dynop_grid(const DynOperator& L, const GridSymbol& f);

// {a, b} = ∂q a · ∂p b − ∂p a · ∂q b  (pointwise products).
GridSymbol poisson_bracket_grid(const GridSymbol& a, const GridSymbol& b);

// ---------- moments ----------

struct GridMoments {
  double mass = 0;
  double mean_q = 0, mean_p = 0;
  double var_qq = 0, var_pp = 0, cov_qp = 0;
};

// Trapezoid-rule mass, mean and central second moments of Re f.
GridMoments grid_moments(const GridSymbol& f);

// ---------- classical evolution ----------

struct ClassicalEvolution {
  std::vector<double> times;
  std::vector<GridMoments> moments;
  std::vector<double> snapshot_times;
  std::vector<GridSymbol> snapshots;
};

// Classical RK4 integration of ∂t f = L f with stability guards:
// drift speed limits dt to 0.5·h/max|velocity| and diffusion to 0.25·h²/max|D|.
// snapshot_stride > 0 stores f every that many steps (plus the initial one).
ClassicalEvolution evolve_classical(const DynOperator& L, const GridSymbol& f0, double dt,
                                    int steps, int snapshot_stride = 0);

} // namespace dynaquant
