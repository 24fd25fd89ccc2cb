// quantize.cpp — classical dynamical operators → superoperators, and back
#include "dynaquant/quantize.hpp"

#include <array>
#include <map>
#include <tuple>

namespace dynaquant {

namespace {

// The four lifted factors Q¹, Q², iP¹, iP² are two-sided multiplications
// X ↦ left·X + X·right.  Kept in that form, any product of factors expands
// over left/right choices into kron(Rᵀ, L) summands with n×n pieces: the
// chosen left parts compose in factor order, the right parts in reverse.
// Assembling a term this way costs O(n⁴) instead of the O(n⁶) of explicit
// superoperator products, and keeps peak memory at one n²×n² accumulator.
struct TwoSided {
  Matrix left, right;
};

std::array<TwoSided, 4> lifted_factors(const FockSpacePtr& s) {
  const cxd iu(0.0, 1.0);
  const double h = s->hbar;
  return {TwoSided{0.5 * s->q, 0.5 * s->q},           // Q¹:  X ↦ (q̂X + Xq̂)/2
          TwoSided{0.5 * s->p, 0.5 * s->p},           // Q²:  X ↦ (p̂X + Xp̂)/2
          TwoSided{(iu / h) * s->p, (-iu / h) * s->p},    // iP¹: X ↦ (i/ħ)[p̂, X]
          TwoSided{(-iu / h) * s->q, (iu / h) * s->q}};   // iP²: X ↦ −(i/ħ)[q̂, X]
}

// pows[k] = M^k, built on demand.
const Matrix& power_of(std::vector<Matrix>& pows, const Matrix& M, int k) {
  while (static_cast<int>(pows.size()) <= k) {
    if (pows.empty())
      pows.push_back(Matrix::Identity(M.rows(), M.cols()));
    else
      pows.push_back(pows.back() * M);
  }
  return pows[k];
}

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// acc += w · (matrix of X ↦ A·X + X·B).
void add_two_sided(Matrix& acc, cxd w, const TwoSided& f) {
  const Index n = f.left.rows();
  const Matrix I = Matrix::Identity(n, n);
  kron_accumulate(acc, w, I, f.left);
  kron_accumulate(acc, w, f.right.transpose(), I);
}

// acc += w · (matrix of the composition S1∘S2) for two-sided maps
// Sk: X ↦ Ak·X + X·Bk; all four left/right choices stay n×n-sized.
void add_two_sided_product(Matrix& acc, cxd w, const TwoSided& f1, const TwoSided& f2) {
  const Index n = f1.left.rows();
  const Matrix I = Matrix::Identity(n, n);
  kron_accumulate(acc, w, I, f1.left * f2.left);
  kron_accumulate(acc, w, f2.right.transpose(), f1.left);
  kron_accumulate(acc, w, f1.right.transpose(), f2.left);
  kron_accumulate(acc, w, (f2.right * f1.right).transpose(), I);
}

// Word-averaged (symmetrized) products of the small left or right parts over
// a factor multiset, by first-factor recursion:
//   T(v) = (1/|v|) Σ_s v_s · M_s · T(v − e_s).
class SymmetrizedProducts {
public:
  explicit SymmetrizedProducts(std::array<Matrix, 4> mats) : mats_(std::move(mats)) {}

  const Matrix& at(const std::array<int, 4>& v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    const int total = v[0] + v[1] + v[2] + v[3];
    Matrix acc;
    if (total == 0) {
      acc = Matrix::Identity(mats_[0].rows(), mats_[0].cols());
    } else {
      acc = Matrix::Zero(mats_[0].rows(), mats_[0].cols());
      for (int i = 0; i < 4; ++i) {
        if (v[i] == 0) continue;
        std::array<int, 4> w = v;
        --w[i];
        acc += (double(v[i]) / total) * (mats_[i] * at(w));
      }
    }
    return memo_.emplace(v, std::move(acc)).first->second;
  }

private:
  std::array<Matrix, 4> mats_;
  std::map<std::array<int, 4>, Matrix> memo_;
};

} // namespace

SuperOperator quantize_qp(const FockSpacePtr& s, const DynOperator& L) {
  if (L.form != DynForm::QP)
    throw std::invalid_argument("quantize_qp: operator must carry QP ordering");
  const std::array<TwoSided, 4> f = lifted_factors(s);
  const Index n2 = Index(s->dim) * s->dim;
  std::array<std::vector<Matrix>, 4> lp, rp; // cached powers of the small parts
  Matrix acc = Matrix::Zero(n2, n2);
  for (const DynTerm& t : L.terms) {
    if (t.qpow < 0 || t.ppow < 0 || t.dqpow < 0 || t.dppow < 0)
      throw std::invalid_argument("quantize_qp: negative powers");
    const std::array<int, 4> pw{t.qpow, t.ppow, t.dqpow, t.dppow};
    // Within one factor type the left picks are interchangeable (binomial
    // weights); across types the left parts compose in factor order and the
    // right parts in the reverse order.
    for (int k0 = 0; k0 <= pw[0]; ++k0)
      for (int k1 = 0; k1 <= pw[1]; ++k1)
        for (int k2 = 0; k2 <= pw[2]; ++k2)
          for (int k3 = 0; k3 <= pw[3]; ++k3) {
            Matrix lhs = power_of(lp[0], f[0].left, k0) * power_of(lp[1], f[1].left, k1) *
                         power_of(lp[2], f[2].left, k2) * power_of(lp[3], f[3].left, k3);
            Matrix rhs = power_of(rp[3], f[3].right, pw[3] - k3) *
                         power_of(rp[2], f[2].right, pw[2] - k2) *
                         power_of(rp[1], f[1].right, pw[1] - k1) *
                         power_of(rp[0], f[0].right, pw[0] - k0);
            const double ways =
                binom(pw[0], k0) * binom(pw[1], k1) * binom(pw[2], k2) * binom(pw[3], k3);
            kron_accumulate(acc, t.coeff * ways, rhs.transpose(), lhs);
          }
  }
  return {s, acc};
}

SuperOperator quantize_symmetric(const FockSpacePtr& s, const DynOperator& L) {
  if (L.form != DynForm::Symmetric)
    throw std::invalid_argument("quantize_symmetric: operator must carry symmetric ordering");
  const std::array<TwoSided, 4> f = lifted_factors(s);
  const Index n2 = Index(s->dim) * s->dim;
  // The ordering average of Π (X ↦ L_k X + X R_k) groups by which copies of
  // each factor act from the left: a split (vL, vR) of the term multiset
  // contributes kron(Sym(vR rights)ᵀ, Sym(vL lefts)) with multiplicity
  // Π C(v_i, vL_i).  Interleaving counts cancel against the word average,
  // and the reversal of the right parts is absorbed by the ordering sum.
  SymmetrizedProducts lefts({f[0].left, f[1].left, f[2].left, f[3].left});
  SymmetrizedProducts rights({f[0].right, f[1].right, f[2].right, f[3].right});
  Matrix acc = Matrix::Zero(n2, n2);
  for (const DynTerm& t : L.terms) {
    if (t.qpow < 0 || t.ppow < 0 || t.dqpow < 0 || t.dppow < 0)
      throw std::invalid_argument("quantize_symmetric: negative powers");
    if (t.qpow + t.ppow + t.dqpow + t.dppow > 8)
      throw std::invalid_argument("quantize_symmetric: term degree above 8");
    const std::array<int, 4> v{t.qpow, t.ppow, t.dqpow, t.dppow};
    for (int k0 = 0; k0 <= v[0]; ++k0)
      for (int k1 = 0; k1 <= v[1]; ++k1)
        for (int k2 = 0; k2 <= v[2]; ++k2)
          for (int k3 = 0; k3 <= v[3]; ++k3) {
            const std::array<int, 4> vl{k0, k1, k2, k3};
            const std::array<int, 4> vr{v[0] - k0, v[1] - k1, v[2] - k2, v[3] - k3};
            const double ways =
                binom(v[0], k0) * binom(v[1], k1) * binom(v[2], k2) * binom(v[3], k3);
            kron_accumulate(acc, t.coeff * ways, rights.at(vr).transpose(), lefts.at(vl));
          }
  }
  return {s, acc};
}

SuperOperator hamiltonian_generator(const FockSpacePtr& s, const PolynomialSymbol& H) {
  if (!has_real_coefficients(H))
    throw std::invalid_argument("hamiltonian_generator: symbol must have real coefficients");
  Operator Hop = weyl_quantize_poly(s, H);
  SuperOperator c = commutator_mult(Hop);
  return {s, (cxd(0.0, 1.0) / s->hbar) * c.mat};
}

// ---------- kinetic master generator ----------

SuperOperator build_fp_master_direct(const FockSpacePtr& s, const FpCoefficients& c) {
  if (c.c_pq == 0.0)
    throw std::invalid_argument("build_fp_master_direct: c_pq must be nonzero");
  const double m = -1.0 / c.c_pq;
  if (!(m > 0.0))
    throw std::invalid_argument("build_fp_master_direct: mapped mass -1/c_pq must be > 0");
  const double omega_sq = -c.c_qp * c.c_pq;
  const double lambda = 0.5 * (c.c_pp + c.c_qq);
  const double mu = 0.5 * (c.c_pp - c.c_qq);
  const double h = s->hbar;

  const Matrix Hmat = harmonic_hamiltonian(*s, m, omega_sq);
  const Matrix& q = s->q;
  const Matrix& p = s->p;
  const TwoSided CH{Hmat, -Hmat}, Cq{q, -q}, Cp{p, -p};
  const TwoSided Jq{0.5 * q, 0.5 * q}, Jp{0.5 * p, 0.5 * p};

  const Index n2 = Index(s->dim) * s->dim;
  Matrix out = Matrix::Zero(n2, n2);
  add_two_sided(out, cxd(0.0, -1.0) / h, CH);
  add_two_sided_product(out, cxd(0.0, 1.0) * (lambda - mu) / h, Cp, Jq);
  add_two_sided_product(out, cxd(0.0, -1.0) * (lambda + mu) / h, Cq, Jp);
  add_two_sided_product(out, cxd(-c.d_pp / (h * h), 0.0), Cq, Cq);
  add_two_sided_product(out, cxd(-c.d_qq / (h * h), 0.0), Cp, Cp);
  add_two_sided_product(out, cxd(2.0 * c.d_qp / (h * h), 0.0), Cp, Cq);
  return {s, out};
}

TraceScan trace_preservation_scan(const FockSpacePtr& s, const FpCoefficients& c) {
  FpCoefficients c0 = c;
  c0.h = 0.0;
  SuperOperator S0 = quantize_qp(s, fokker_planck_dynop(c0));
  // Trace preservation on a domain D: ⟨I, S ρ⟩ = 0 for ρ supported on D,
  // i.e. the adjoint action on the identity vanishes there.  Adding the
  // constant h shifts that action by h·I, so fit h* on the interior.
  const int n = s->dim;
  Matrix G = unvec(S0.mat.adjoint() * vec(Matrix::Identity(n, n)), n, n);
  const int levels = n - 2;
  double tr = 0.0;
  for (int k = 0; k < levels; ++k) tr += G(k, k).real();
  TraceScan out;
  out.h_star = -tr / levels;
  Matrix R = G + out.h_star * Matrix::Identity(n, n);
  out.residual = R.topLeftCorner(levels, levels).norm();
  out.h_reference = -2.0 * (c.c_pp + c.c_qq);
  out.matches_reference =
      std::abs(out.h_star - out.h_reference) <= 1e-10 * std::max(1.0, std::abs(out.h_reference));
  return out;
}

// ---------- dequantization ----------

namespace {

struct BasisEntry {
  std::vector<std::array<int, 4>> monos;
  Eigen::ColPivHouseholderQR<Matrix> qr;
  Index cols = 0;
};

std::vector<std::array<int, 4>> monomials_up_to(int degree) {
  std::vector<std::array<int, 4>> out;
  for (int total = 0; total <= degree; ++total)
    for (int a = total; a >= 0; --a)
      for (int b = total - a; b >= 0; --b)
        for (int cpow = total - a - b; cpow >= 0; --cpow)
          out.push_back({a, b, cpow, total - a - b - cpow});
  return out;
}

const BasisEntry& cached_basis(const FockSpacePtr& s, int degree) {
  using Key = std::tuple<int, double, double, double, int>;
  static std::map<Key, BasisEntry> cache;
  Key key{s->dim, s->hbar, s->mass, s->omega, degree};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  BasisEntry entry;
  entry.monos = monomials_up_to(degree);
  entry.cols = static_cast<Index>(entry.monos.size());
  const Index n4 = Index(s->dim) * s->dim * Index(s->dim) * s->dim;
  Matrix cols(n4, entry.cols);
  for (Index j = 0; j < entry.cols; ++j) {
    const auto& m = entry.monos[j];
    DynOperator mono;
    mono.form = DynForm::QP;
    mono.terms.push_back({cxd(1.0, 0.0), m[0], m[1], m[2], m[3]});
    cols.col(j) = vec(quantize_qp(s, mono).mat);
  }
  entry.qr.compute(cols);
  return cache.emplace(key, std::move(entry)).first->second;
}

} // namespace

DynOperator dequantize(const SuperOperator& S, int max_degree) {
  if (max_degree < 0 || max_degree > 4)
    throw std::invalid_argument("dequantize: max_degree must lie in [0, 4]");
  const BasisEntry& basis = cached_basis(S.space, max_degree);
  if (basis.qr.rank() < basis.cols)
    throw RankDeficientError("dequantize: monomial basis is rank deficient on this space",
                             basis.qr.rank(), basis.cols);
  Vector coeffs = basis.qr.solve(vec(S.mat));
  DynOperator out;
  out.form = DynForm::QP;
  for (size_t j = 0; j < basis.monos.size(); ++j) {
    const auto& m = basis.monos[j];
    out.terms.push_back({coeffs[static_cast<Index>(j)], m[0], m[1], m[2], m[3]});
  }
  return normalized(out);
}

} // namespace dynaquant
