// fock.cpp — truncated oscillator space, canonical operators, Weyl machinery
#include "dynaquant/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace dynaquant {

// ---------- space and operators ----------

Matrix lowering(int dim) {
  if (dim < 1) throw std::invalid_argument("lowering: dim must be >= 1");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

FockSpacePtr build_space(int dim, double hbar, double mass, double omega) {
  if (dim < 2) throw std::invalid_argument("build_space: dim must be >= 2");
  if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("build_space: hbar, mass and omega must be > 0");
  Matrix a = lowering(dim);
  Matrix ad = a.adjoint();
  auto s = std::make_shared<FockSpace>();
  s->dim = dim;
  s->hbar = hbar;
  s->mass = mass;
  s->omega = omega;
  s->q = std::sqrt(hbar / (2.0 * mass * omega)) * (a + ad);
  s->p = cxd(0.0, 1.0) * std::sqrt(hbar * mass * omega / 2.0) * (ad - a);
  return s;
}

bool same_space(const FockSpacePtr& a, const FockSpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->dim == b->dim && a->hbar == b->hbar && a->mass == b->mass && a->omega == b->omega;
}

static void require_same(const Operator& a, const Operator& b, const char* who) {
  if (!same_space(a.space, b.space))
    throw std::invalid_argument(std::string(who) + ": operators live on different spaces");
}

Operator identity_op(const FockSpacePtr& s) {
  return {s, Matrix::Identity(s->dim, s->dim)};
}
Operator q_op(const FockSpacePtr& s) { return {s, s->q}; }
Operator p_op(const FockSpacePtr& s) { return {s, s->p}; }

Matrix harmonic_hamiltonian(const FockSpace& s, double mass, double omega_sq) {
  if (!(mass > 0.0)) throw std::invalid_argument("harmonic_hamiltonian: mass must be > 0");
  return (s.p * s.p) / (2.0 * mass) + (0.5 * mass * omega_sq) * (s.q * s.q);
}

Operator harmonic_hamiltonian(const FockSpacePtr& s) {
  return {s, harmonic_hamiltonian(*s, s->mass, s->omega * s->omega)};
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same(a, b, "Operator operator+");
  return {a.space, a.mat + b.mat};
}
Operator operator-(const Operator& a, const Operator& b) {
  require_same(a, b, "Operator operator-");
  return {a.space, a.mat - b.mat};
}
Operator operator*(cxd c, const Operator& a) { return {a.space, c * a.mat}; }
Operator operator*(const Operator& a, const Operator& b) {
  require_same(a, b, "Operator operator*");
  return {a.space, a.mat * b.mat};
}
Operator adjoint(const Operator& a) { return {a.space, a.mat.adjoint()}; }
cxd trace(const Operator& a) { return a.mat.trace(); }
double frobenius_norm(const Operator& a) { return a.mat.norm(); }

Operator jordan(const Operator& a, const Operator& b) {
  require_same(a, b, "jordan");
  return {a.space, 0.5 * (a.mat * b.mat + b.mat * a.mat)};
}

Operator lie(const Operator& a, const Operator& b) {
  require_same(a, b, "lie");
  return {a.space, (a.mat * b.mat - b.mat * a.mat) / cxd(0.0, a.space->hbar)};
}

Operator interior_projector(const FockSpacePtr& s, int levels) {
  if (levels < 0) levels = s->dim - 2;
  if (levels > s->dim)
    throw std::invalid_argument("interior_projector: levels exceed space dimension");
  Matrix P = Matrix::Zero(s->dim, s->dim);
  for (int k = 0; k < levels; ++k) P(k, k) = 1.0;
  return {s, P};
}

Vector coherent_ket(const FockSpacePtr& s, cxd alpha) {
  const double a2 = std::norm(alpha);
  if (a2 > 0.25 * s->dim)
    throw std::invalid_argument("coherent_ket: |alpha|^2 must be <= dim/4");
  Vector ket(s->dim);
  cxd c = std::exp(-0.5 * a2);
  ket[0] = c;
  for (int n = 1; n < s->dim; ++n) {
    c *= alpha / std::sqrt(double(n));
    ket[n] = c;
  }
  ket /= ket.norm();
  return ket;
}

Operator coherent_state(const FockSpacePtr& s, cxd alpha) {
  Vector ket = coherent_ket(s, alpha);
  return {s, ket * ket.adjoint()};
}

Operator fock_state(const FockSpacePtr& s, int level) {
  if (level < 0 || level >= s->dim)
    throw std::invalid_argument("fock_state: level outside space");
  Matrix m = Matrix::Zero(s->dim, s->dim);
  m(level, level) = 1.0;
  return {s, m};
}

// ---------- Weyl machinery ----------

Operator weyl_operator(const FockSpacePtr& s, double a1, double a2) {
  Matrix gen = cxd(0.0, 1.0) * (a1 * s->q + a2 * s->p);
  return {s, expm(gen)};
}

Operator weyl_quantize_poly(const FockSpacePtr& s, const PolynomialSymbol& sym) {
  PolynomialSymbol ns = normalized(sym);
  int amax = 0, bmax = 0;
  for (const PolyTerm& t : ns.terms) {
    amax = std::max(amax, t.qexp);
    bmax = std::max(bmax, t.pexp);
  }
  // W(a,b): symmetrized q^a p^b by first-factor recursion
  //   W(a,b) = (a q̂ W(a-1,b) + b p̂ W(a,b-1)) / (a+b).
  std::vector<std::vector<Matrix>> W(amax + 1, std::vector<Matrix>(bmax + 1));
  W[0][0] = Matrix::Identity(s->dim, s->dim);
  for (int a = 0; a <= amax; ++a)
    for (int b = 0; b <= bmax; ++b) {
      if (a == 0 && b == 0) continue;
      Matrix acc = Matrix::Zero(s->dim, s->dim);
      if (a > 0) acc += double(a) * (s->q * W[a - 1][b]);
      if (b > 0) acc += double(b) * (s->p * W[a][b - 1]);
      W[a][b] = acc / double(a + b);
    }
  Matrix out = Matrix::Zero(s->dim, s->dim);
  for (const PolyTerm& t : ns.terms) out += t.coeff * W[t.qexp][t.pexp];
  return {s, out};
}

Operator symmetrize_bruteforce(const FockSpacePtr& s, int qexp, int pexp) {
  if (qexp < 0 || pexp < 0)
    throw std::invalid_argument("symmetrize_bruteforce: exponents must be >= 0");
  if (qexp + pexp > 8)
    throw std::invalid_argument("symmetrize_bruteforce: total degree above 8");
  std::vector<int> word(qexp, 0);
  word.insert(word.end(), pexp, 1);
  std::sort(word.begin(), word.end());
  Matrix acc = Matrix::Zero(s->dim, s->dim);
  long count = 0;
  do {
    Matrix prod = Matrix::Identity(s->dim, s->dim);
    for (int letter : word) prod = prod * (letter == 0 ? s->q : s->p);
    acc += prod;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return {s, acc / double(count)};
}

Matrix displacement_matrix(int dim, cxd mu) {
  if (dim < 1) throw std::invalid_argument("displacement_matrix: dim must be >= 1");
  const double x = std::norm(mu);
  const double env = std::exp(-0.5 * x);
  Matrix D = Matrix::Zero(dim, dim);
  // Band k of the infinite-dimensional displacement:
  //   ⟨n+k|D|n⟩ = sqrt(n!/(n+k)!) μ^k e^{-x/2} L_n^{(k)}(x),
  //   ⟨n|D|n+k⟩ = the same with μ^k replaced by (-μ̄)^k.
  for (int k = 0; k < dim; ++k) {
    const cxd cl = (k == 0) ? cxd(1.0) : std::pow(mu, k);
    const cxd cu = (k == 0) ? cxd(1.0) : std::pow(-std::conj(mu), k);
    double ratio = 1.0; // sqrt(n!/(n+k)!) at current n
    for (int j = 1; j <= k; ++j) ratio /= std::sqrt(double(j));
    double Lp = 0.0, Lc = 1.0; // L_{n-1}, L_n with L_0 = 1
    for (int n = 0; n + k < dim; ++n) {
      if (n == 1) {
        Lp = Lc;
        Lc = 1.0 + k - x;
      } else if (n >= 2) {
        double Ln = ((2.0 * (n - 1) + k + 1.0 - x) * Lc - (n - 1.0 + k) * Lp) / double(n);
        Lp = Lc;
        Lc = Ln;
      }
      const double val = Lc * ratio * env;
      D(n + k, n) = val * cl;
      if (k > 0) D(n, n + k) = val * cu;
      ratio *= std::sqrt(double(n + 1) / double(n + 1 + k));
    }
  }
  return D;
}

GridSymbol weyl_symbol(const Operator& A, const PhaseGrid& grid) {
  const FockSpace& s = *A.space;
  constexpr int na = 64;
  const double pi = std::numbers::pi;
  // Frequency cutoff at the grid Nyquist limit keeps sub-grid oscillation of
  // the truncated kernel out of the reconstruction.
  const double A1 = pi / grid.dq(), A2 = pi / grid.dp();
  const double da1 = 2.0 * A1 / na, da2 = 2.0 * A2 / na;
  std::vector<double> a1g(na), a2g(na);
  for (int k = 0; k < na; ++k) {
    a1g[k] = -A1 + (k + 0.5) * da1;
    a2g[k] = -A2 + (k + 0.5) * da2;
  }
  const double cq = std::sqrt(s.hbar / (2.0 * s.mass * s.omega));
  const double cp = std::sqrt(s.hbar * s.mass * s.omega / 2.0);
  Matrix Top(na, na), Tid(na, na);
  const Matrix At = A.mat.transpose();
  for (int l = 0; l < na; ++l)
    for (int k = 0; k < na; ++k) {
      // exp(i(a1 q̂ + a2 p̂)) = exp(μ a† − μ̄ a) with μ = -a2 cp + i a1 cq
      const cxd mu(-a2g[l] * cp, a1g[k] * cq);
      Matrix D = displacement_matrix(s.dim, mu);
      Top(k, l) = At.cwiseProduct(D).sum();
      Tid(k, l) = D.trace();
    }
  Matrix E1(na, grid.nq), E2(na, grid.np);
  for (int i = 0; i < grid.nq; ++i)
    for (int k = 0; k < na; ++k) E1(k, i) = std::exp(cxd(0.0, -a1g[k] * grid.q(i)));
  for (int j = 0; j < grid.np; ++j)
    for (int l = 0; l < na; ++l) E2(l, j) = std::exp(cxd(0.0, -a2g[l] * grid.p(j)));
  const cxd cell(da1 * da2, 0.0);
  Matrix raw = (E1.transpose() * Top * E2) * cell;
  Matrix raw_id = (E1.transpose() * Tid * E2) * cell;
  // Normalize with the interior mean of the identity symbol (a single scalar;
  // the edges are excluded because the reconstruction ringing concentrates
  // there).
  cxd acc = 0.0;
  long cnt = 0;
  for (int j = 2; j < grid.np - 2; ++j)
    for (int i = 2; i < grid.nq - 2; ++i) {
      acc += raw_id(i, j);
      ++cnt;
    }
  const cxd mean = acc / double(cnt);
  if (std::abs(mean) < 1e-12)
    throw std::runtime_error("weyl_symbol: degenerate normalization (grid too coarse?)");
  return GridSymbol{grid, raw / mean};
}

} // namespace dynaquant
