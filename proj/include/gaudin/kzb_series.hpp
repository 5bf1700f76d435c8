#pragma once

// Truncated power series in Λ = e^{-2 pi sqrt(-1) λ}: eigenfunctions of the
// two-particle trigonometric spin Hamiltonian H_0 on the zero-weight block,
// and the order-by-order action of the commuting family H_0, H_1(z), ...,
// H_n(z) and of the operator coefficient C_2(x).
//
// Normalization: stored coefficients are pi-free.  A pi_power tag counts
// powers of plain pi, and factors of sqrt(-1) stay in the coefficients:
//   pi cot(pi λ)       ->  tag 1, coefficients i(1, 2, 2, 2, ...)
//   pi^2/sin^2(pi λ)   ->  tag 2, coefficients -4(0, 1, 2, 3, ...)
// A tagged element of the μ-sector represents
//   pi^{pi_power} e^{pi sqrt(-1) μ λ} sum_k Λ^k ψ^k,   ψ^k in V[0],
// so d/dλ multiplies the Λ^k slot by i(μ - 2k) and raises the tag by one.
// Since all identity checks are tag-homogeneous they hold exactly over Q(i).

#include <string>
#include <vector>

#include "gaudin/gaudin_ops.hpp"

namespace gaudin {

// ---------------------------------------------------------------------------
// Scalar Λ-series.

template <class S>
struct ScalarLambdaSeries {
  int pi_power = 0;
  std::vector<S> coeffs;  // c_0 .. c_K

  int order() const { return int(coeffs.size()) - 1; }

  // Value of the pi-stripped part, sum_k c_k Λ^k (caller supplies pi^tag).
  S eval(const S& lam) const {
    S acc = scalar_traits<S>::zero();
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * lam + coeffs[k];
    return acc;
  }
};

template <class S>
ScalarLambdaSeries<S> series_add(const ScalarLambdaSeries<S>& a, const ScalarLambdaSeries<S>& b) {
  if (a.pi_power != b.pi_power)
    throw std::invalid_argument("series_add: mismatched pi normalization");
  ScalarLambdaSeries<S> out;
  out.pi_power = a.pi_power;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), scalar_traits<S>::zero());
  for (size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] += a.coeffs[k];
  for (size_t k = 0; k < b.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
  return out;
}

// Product truncated at the larger of the operand orders (the ring is
// C[Λ]/Λ^{K+1} with every series in a computation sharing the order K).
template <class S>
ScalarLambdaSeries<S> series_mul(const ScalarLambdaSeries<S>& a, const ScalarLambdaSeries<S>& b) {
  ScalarLambdaSeries<S> out;
  out.pi_power = a.pi_power + b.pi_power;
  const size_t len = std::max(a.coeffs.size(), b.coeffs.size());
  out.coeffs.assign(len, scalar_traits<S>::zero());
  for (size_t r = 0; r < a.coeffs.size(); ++r)
    for (size_t j = 0; j < b.coeffs.size() && r + j < len; ++j)
      out.coeffs[r + j] += a.coeffs[r] * b.coeffs[j];
  return out;
}

template <class S>
struct TrigExpansions {
  ScalarLambdaSeries<S> cot;       // pi cot(pi λ) = pi i (1 + 2Λ + 2Λ^2 + ...)
  ScalarLambdaSeries<S> inv_sin2;  // pi^2/sin^2(pi λ) = -4 pi^2 (Λ + 2Λ^2 + ...)
};

template <class S>
TrigExpansions<S> trig_expansions(int K) {
  if (K < 0) throw std::invalid_argument("trig_expansions: negative order");
  TrigExpansions<S> t;
  const S i = scalar_traits<S>::i();
  t.cot.pi_power = 1;
  t.inv_sin2.pi_power = 2;
  t.cot.coeffs.assign(K + 1, i + i);
  t.cot.coeffs[0] = i;
  t.inv_sin2.coeffs.assign(K + 1, scalar_traits<S>::zero());
  for (int k = 1; k <= K; ++k) t.inv_sin2.coeffs[k] = scalar_traits<S>::ratio(-4 * k, 1);
  return t;
}

// ---------------------------------------------------------------------------
// Vector-valued Λ-series in the μ-sector.

template <class S>
struct LambdaSeriesVector {
  S mu;
  int K = 0;
  int pi_power = 0;
  std::vector<std::vector<S>> coeffs;  // slots ψ^0 .. ψ^K, each of block dim
};

namespace detail {

template <class S>
void check_series(const LambdaSeriesVector<S>& psi) {
  if (int(psi.coeffs.size()) != psi.K + 1)
    throw std::invalid_argument("lambda series: slot count != K + 1");
}

}  // namespace detail

template <class S>
bool lambda_is_zero(const LambdaSeriesVector<S>& psi) {
  for (const auto& slot : psi.coeffs)
    for (const auto& c : slot)
      if (!scalar_traits<S>::is_zero(c)) return false;
  return true;
}

template <class S>
double lambda_max_abs(const LambdaSeriesVector<S>& psi) {
  double m = 0;
  for (const auto& slot : psi.coeffs) m = std::max(m, max_abs(slot));
  return m;
}

template <class S>
bool lambda_equal(const LambdaSeriesVector<S>& a, const LambdaSeriesVector<S>& b) {
  if (a.K != b.K || a.pi_power != b.pi_power) return false;
  if (!scalar_traits<S>::is_zero(a.mu - b.mu)) return false;
  for (int k = 0; k <= a.K; ++k) {
    if (a.coeffs[k].size() != b.coeffs[k].size()) return false;
    for (size_t j = 0; j < a.coeffs[k].size(); ++j)
      if (!scalar_traits<S>::is_zero(a.coeffs[k][j] - b.coeffs[k][j])) return false;
  }
  return true;
}

template <class S>
LambdaSeriesVector<S> lambda_add(const LambdaSeriesVector<S>& a, const LambdaSeriesVector<S>& b) {
  detail::check_series(a);
  detail::check_series(b);
  if (a.K != b.K || a.pi_power != b.pi_power || !scalar_traits<S>::is_zero(a.mu - b.mu))
    throw std::invalid_argument("lambda_add: series from different sectors");
  LambdaSeriesVector<S> out = a;
  for (int k = 0; k <= a.K; ++k) {
    if (a.coeffs[k].size() != b.coeffs[k].size())
      throw std::invalid_argument("lambda_add: slot dimension mismatch");
    for (size_t j = 0; j < out.coeffs[k].size(); ++j) out.coeffs[k][j] += b.coeffs[k][j];
  }
  return out;
}

template <class S>
LambdaSeriesVector<S> lambda_scale(const LambdaSeriesVector<S>& psi, const S& c) {
  LambdaSeriesVector<S> out = psi;
  for (auto& slot : out.coeffs)
    for (auto& v : slot) v *= c;
  return out;
}

template <class S>
LambdaSeriesVector<S> lambda_sub(const LambdaSeriesVector<S>& a, const LambdaSeriesVector<S>& b) {
  return lambda_add(a, lambda_scale(b, -scalar_traits<S>::one()));
}

// Multiplication by a scalar Λ-series, truncated at the vector's order K.
template <class S>
LambdaSeriesVector<S> lambda_series_mul(const LambdaSeriesVector<S>& psi,
                                        const ScalarLambdaSeries<S>& f) {
  detail::check_series(psi);
  LambdaSeriesVector<S> out = psi;
  out.pi_power += f.pi_power;
  for (auto& slot : out.coeffs)
    slot.assign(slot.size(), scalar_traits<S>::zero());
  for (int k = 0; k <= psi.K; ++k)
    for (int r = 0; r <= k && r < int(f.coeffs.size()); ++r)
      for (size_t j = 0; j < psi.coeffs[k - r].size(); ++j)
        out.coeffs[k][j] += f.coeffs[r] * psi.coeffs[k - r][j];
  return out;
}

// d/dλ: the Λ^k slot of the μ-sector is multiplied by pi sqrt(-1) (μ - 2k).
template <class S>
LambdaSeriesVector<S> d_lambda(const LambdaSeriesVector<S>& psi) {
  detail::check_series(psi);
  LambdaSeriesVector<S> out = psi;
  out.pi_power += 1;
  const S i = scalar_traits<S>::i();
  for (int k = 0; k <= psi.K; ++k) {
    S f = i * (psi.mu - scalar_traits<S>::ratio(2 * k, 1));
    for (auto& v : out.coeffs[k]) v *= f;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The operator family on the zero-weight block.

// Site and pair matrices restricted to V[0], built once per space:
//   om_diag = E11^2 + E22^2          (E_ab = sum_s e_ab^(s))
//   om_off  = E12 E21 + E21 E12
//   h[s]    = (e11 - e22)^(s)
//   om_sym[s][t]   = Omega^(s,t) = Omega_0 + Omega_12 + Omega_21
//   skew_sum[s]    = sum_{t != s} (Omega_12 - Omega_21)^(s,t)
template <class S>
struct KzbOperators {
  TensorSpace space;
  int dim = 0;
  Matrix<S> om_diag, om_off;
  std::vector<Matrix<S>> h;
  std::vector<Matrix<S>> skew_sum;
  std::vector<std::vector<Matrix<S>>> om_sym;
};

template <class S>
KzbOperators<S> kzb_operators(const TensorSpace& sp) {
  if (!sp.has_block(0))
    throw std::invalid_argument("kzb_operators: space has no zero-weight block");
  KzbOperators<S> ops{sp};
  ops.dim = sp.block_dim(0);
  const int n = sp.sites();

  auto diag = [&](Gen g) { return generator_matrix<S>(sp, g, kDiagonal); };
  Matrix<S> e11 = diag(Gen::e11), e22 = diag(Gen::e22);
  Matrix<S> e12 = diag(Gen::e12), e21 = diag(Gen::e21);
  ops.om_diag = restrict_blocks(sp, e11 * e11 + e22 * e22, 0, 0);
  ops.om_off = restrict_blocks(sp, e12 * e21 + e21 * e12, 0, 0);

  for (int s = 0; s < n; ++s)
    ops.h.push_back(restrict_blocks(
        sp, generator_matrix<S>(sp, Gen::e11, s) - generator_matrix<S>(sp, Gen::e22, s), 0, 0));

  ops.om_sym.assign(n, std::vector<Matrix<S>>(n));
  ops.skew_sum.assign(n, Matrix<S>(ops.dim, ops.dim));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      OmegaPair<S> om = omega_pair<S>(sp, s, t);
      ops.om_sym[s][t] = restrict_blocks(sp, om.om0 + om.om12 + om.om21, 0, 0);
      ops.skew_sum[s] += restrict_blocks(sp, om.om12 - om.om21, 0, 0);
    }
  return ops;
}

namespace detail {

template <class S>
void check_block_series(const KzbOperators<S>& ops, const LambdaSeriesVector<S>& psi) {
  check_series(psi);
  for (const auto& slot : psi.coeffs)
    if (int(slot.size()) != ops.dim)
      throw std::invalid_argument("lambda series: slot dimension != dim V[0]");
}

template <class S>
void axpy(std::vector<S>& acc, const S& c, const std::vector<S>& v) {
  for (size_t j = 0; j < acc.size(); ++j) acc[j] += c * v[j];
}

template <class S>
bool all_zero(const std::vector<S>& v) {
  for (const auto& c : v)
    if (!scalar_traits<S>::is_zero(c)) return false;
  return true;
}

}  // namespace detail

// The unique series with H_0 ψ = pi sqrt(-1) (μ^2/2) ψ and ψ^0 = v, through
// order K.  The Λ^k slot solves
//   [2k(k - μ) Id + (1/8)(E11^2 + E22^2)] ψ^k = sum_{r=1}^k r Om ψ^{k-r},
// Om = E12 E21 + E21 E12; the matrix is required invertible at every order
// (it degenerates exactly when μ = k, hence the assumption μ not in Z_{>0}).
template <class S>
LambdaSeriesVector<S> build_eigenfunction(const KzbOperators<S>& ops, const std::vector<S>& v,
                                          const S& mu, int K) {
  if (K < 0) throw std::invalid_argument("build_eigenfunction: negative order");
  if (int(v.size()) != ops.dim)
    throw std::invalid_argument("build_eigenfunction: vector dimension != dim V[0]");
  if (detail::all_zero(v)) throw std::invalid_argument("build_eigenfunction: zero seed vector");

  LambdaSeriesVector<S> psi;
  psi.mu = mu;
  psi.K = K;
  psi.coeffs.assign(K + 1, std::vector<S>(ops.dim, scalar_traits<S>::zero()));
  psi.coeffs[0] = v;

  const S eighth = scalar_traits<S>::ratio(1, 8);
  for (int k = 1; k <= K; ++k) {
    std::vector<S> rhs(ops.dim, scalar_traits<S>::zero());
    for (int r = 1; r <= k; ++r)
      detail::axpy(rhs, scalar_traits<S>::ratio(r, 1), ops.om_off.apply(psi.coeffs[k - r]));
    S shift = scalar_traits<S>::ratio(2 * k, 1) * (scalar_traits<S>::ratio(k, 1) - mu);
    Matrix<S> m = ops.om_diag * eighth + Matrix<S>::identity(ops.dim) * shift;
    SolveOutcome<S> sol = solve_consistent(m, rhs);
    if (!sol.unique || sol.residual > 0)
      throw std::domain_error("build_eigenfunction: singular order-" + std::to_string(k) +
                              " system (mu = " + std::to_string(k) + " is excluded)");
    psi.coeffs[k] = std::move(sol.x);
  }
  return psi;
}

// H_0 ψ with one power of pi stripped.  Slot k:
//   i [ (μ-2k)^2/2 ψ^k + (1/8) om_diag ψ^k - sum_{r=1}^k r om_off ψ^{k-r} ],
// the last sum being the 1/sin^2 factor written in Λ.
template <class S>
LambdaSeriesVector<S> apply_H0(const KzbOperators<S>& ops, const LambdaSeriesVector<S>& psi) {
  detail::check_block_series(ops, psi);
  LambdaSeriesVector<S> out = psi;
  out.pi_power += 1;
  const S i = scalar_traits<S>::i();
  const S half = scalar_traits<S>::ratio(1, 2);
  const S eighth = scalar_traits<S>::ratio(1, 8);
  std::vector<std::vector<S>> off(psi.K + 1);
  for (int k = 0; k <= psi.K; ++k) off[k] = ops.om_off.apply(psi.coeffs[k]);
  for (int k = 0; k <= psi.K; ++k) {
    S w = psi.mu - scalar_traits<S>::ratio(2 * k, 1);
    std::vector<S> slot(ops.dim, scalar_traits<S>::zero());
    detail::axpy(slot, w * w * half, psi.coeffs[k]);
    detail::axpy(slot, eighth, ops.om_diag.apply(psi.coeffs[k]));
    for (int r = 1; r <= k; ++r) detail::axpy(slot, scalar_traits<S>::ratio(-r, 1), off[k - r]);
    for (auto& c : slot) c *= i;
    out.coeffs[k] = std::move(slot);
  }
  return out;
}

// H_s(z) ψ with one power of pi stripped.  Slot k:
//   i [ -(μ-2k) h^(s) ψ^k + sum_{t != s} (z_t+z_s)/(z_t-z_s) Omega^(s,t) ψ^k
//       - sum_{r=0}^k c_r skew_sum[s] ψ^{k-r} ],   c = (1, 2, 2, 2, ...),
// the last sum being the cot factor written in Λ.
template <class S>
LambdaSeriesVector<S> apply_Hs(const KzbOperators<S>& ops, const LambdaSeriesVector<S>& psi,
                               int s, const std::vector<S>& z) {
  detail::check_block_series(ops, psi);
  if (s < 0 || s >= ops.space.sites()) throw std::invalid_argument("apply_Hs: bad site");
  if (int(z.size()) != ops.space.sites()) throw std::invalid_argument("apply_Hs: |z| != n");
  require_admissible_poles(z);

  Matrix<S> sym(ops.dim, ops.dim);
  for (int t = 0; t < ops.space.sites(); ++t) {
    if (t == s) continue;
    sym += ops.om_sym[s][t] * ((z[t] + z[s]) / (z[t] - z[s]));
  }

  LambdaSeriesVector<S> out = psi;
  out.pi_power += 1;
  const S i = scalar_traits<S>::i();
  std::vector<std::vector<S>> skew(psi.K + 1);
  for (int k = 0; k <= psi.K; ++k) skew[k] = ops.skew_sum[s].apply(psi.coeffs[k]);
  for (int k = 0; k <= psi.K; ++k) {
    S w = psi.mu - scalar_traits<S>::ratio(2 * k, 1);
    std::vector<S> slot(ops.dim, scalar_traits<S>::zero());
    detail::axpy(slot, -w, ops.h[s].apply(psi.coeffs[k]));
    detail::axpy(slot, scalar_traits<S>::one(), sym.apply(psi.coeffs[k]));
    for (int r = 0; r <= k; ++r)
      detail::axpy(slot, scalar_traits<S>::ratio(r == 0 ? -1 : -2, 1), skew[k - r]);
    for (auto& c : slot) c *= i;
    out.coeffs[k] = std::move(slot);
  }
  return out;
}

// C_2(x) ψ with two powers of pi stripped:
//   C_2(x) = -2 pi i H_0 - sum_s [ 2 pi i H_s(z) f_s + 4 pi^2 c2_s (f_s - f_s^2) ],
// f_s = 1/(1 - x/z_s) and c2_s = -m_s(m_s+2)/4 the central scalar on site s.
template <class S>
LambdaSeriesVector<S> apply_C2(const KzbOperators<S>& ops, const LambdaSeriesVector<S>& psi,
                               const S& x, const std::vector<S>& z) {
  detail::check_block_series(ops, psi);
  if (int(z.size()) != ops.space.sites()) throw std::invalid_argument("apply_C2: |z| != n");
  require_admissible_poles(z);
  for (const S& zs : z)
    if (scalar_traits<S>::is_zero(x - zs)) throw std::domain_error("apply_C2: x at a pole z_s");

  const S i = scalar_traits<S>::i();
  const S minus_2i = -(i + i);
  LambdaSeriesVector<S> out = lambda_scale(apply_H0(ops, psi), minus_2i);
  out.pi_power += 1;  // the stripped H-images carry tag+1; C_2 carries tag+2
  for (int s = 0; s < ops.space.sites(); ++s) {
    S f = scalar_traits<S>::one() / (scalar_traits<S>::one() - x / z[s]);
    LambdaSeriesVector<S> hs = apply_Hs(ops, psi, s, z);
    const int m = ops.space.ms()[s];
    S central = scalar_traits<S>::ratio(m * (m + 2), 1) * (f * f - f);
    for (int k = 0; k <= psi.K; ++k) {
      detail::axpy(out.coeffs[k], minus_2i * f, hs.coeffs[k]);
      detail::axpy(out.coeffs[k], central, psi.coeffs[k]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Defining identities as residual series (exact zeros over Q(i)).

// H_0 ψ - pi sqrt(-1) (μ^2/2) ψ, for any series ψ built as an eigenfunction.
template <class S>
LambdaSeriesVector<S> h0_eigenvalue_defect(const KzbOperators<S>& ops,
                                           const LambdaSeriesVector<S>& psi) {
  LambdaSeriesVector<S> expected =
      lambda_scale(psi, scalar_traits<S>::i() * psi.mu * psi.mu * scalar_traits<S>::ratio(1, 2));
  expected.pi_power += 1;
  return lambda_sub(apply_H0(ops, psi), expected);
}

// H_s(z) ψ_v - ψ_w with w = -2 pi sqrt(-1) K_s(z,μ) v; ψ must be the
// eigenfunction seeded by its own slot 0.
template <class S>
LambdaSeriesVector<S> hs_action_defect(const KzbOperators<S>& ops,
                                       const LambdaSeriesVector<S>& psi, int s,
                                       const std::vector<S>& z) {
  std::vector<S> w = gaudin_operator<S>(ops.space, z, psi.mu, s, 0).mat.apply(psi.coeffs[0]);
  LambdaSeriesVector<S> image = apply_Hs(ops, psi, s, z);
  if (detail::all_zero(w)) return image;  // the expected image is the zero series
  LambdaSeriesVector<S> expected =
      lambda_scale(build_eigenfunction(ops, w, psi.mu, psi.K), -(scalar_traits<S>::i() + scalar_traits<S>::i()));
  expected.pi_power = image.pi_power;
  return lambda_sub(image, expected);
}

// sum_s H_s(z) ψ, which the family annihilates identically.
template <class S>
LambdaSeriesVector<S> hs_sum_defect(const KzbOperators<S>& ops, const LambdaSeriesVector<S>& psi,
                                    const std::vector<S>& z) {
  LambdaSeriesVector<S> acc = apply_Hs(ops, psi, 0, z);
  for (int s = 1; s < ops.space.sites(); ++s) acc = lambda_add(acc, apply_Hs(ops, psi, s, z));
  return acc;
}

// C_2(x) ψ_v - ψ_w where w = (2 pi sqrt(-1))^2 [D_2(x)/(2 pi sqrt(-1))^2] v,
// the bracket being the Gaudin partial-fraction operator on V[0].
template <class S>
LambdaSeriesVector<S> c2_action_defect(const KzbOperators<S>& ops,
                                       const LambdaSeriesVector<S>& psi, const S& x,
                                       const std::vector<S>& z) {
  PartialFractionOperator<S> pf = d2_partial_fractions<S>(ops.space, z, psi.mu, 0);
  std::vector<S> w = pf.eval(x).apply(psi.coeffs[0]);
  LambdaSeriesVector<S> image = apply_C2(ops, psi, x, z);
  if (detail::all_zero(w)) return image;
  LambdaSeriesVector<S> expected =
      lambda_scale(build_eigenfunction(ops, w, psi.mu, psi.K), scalar_traits<S>::ratio(-4, 1));
  expected.pi_power = image.pi_power;
  return lambda_sub(image, expected);
}

}  // namespace gaudin
