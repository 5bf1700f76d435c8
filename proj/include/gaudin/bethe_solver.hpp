#pragma once

// Bethe ansatz layer: residuals and Jacobians of the critical-point system,
// weight-function eigenvectors, eigenvalues of the Gaudin operators on them,
// the scalar second coefficient attached to a solution, and its factorization
// through the root polynomial y(x) = prod (x - t_i).
//
// The number of roots fixes the weight block: nu = M - 2m.

#include <cstdint>
#include <limits>

#include "gaudin/gaudin_ops.hpp"
#include "gaudin/poly.hpp"

namespace gaudin {

inline int bethe_weight(const std::vector<int>& ms, int num_roots) {
  int M = 0;
  for (int m : ms) M += m;
  return M - 2 * num_roots;
}

// (1 - mu + nu/2)/t_i + sum_{j != i} 2/(t_i - t_j) - sum_s m_s/(t_i - z_s)
template <class S>
std::vector<S> bae_residual(const std::vector<S>& ts, const std::vector<S>& z,
                            const std::vector<int>& ms, const S& mu) {
  const int m = int(ts.size());
  const int nu = bethe_weight(ms, m);
  const S c = scalar_traits<S>::one() - mu + scalar_traits<S>::ratio(nu, 2);
  std::vector<S> r(m, scalar_traits<S>::zero());
  for (int i = 0; i < m; ++i) {
    r[i] = c / ts[i];
    for (int j = 0; j < m; ++j)
      if (j != i) r[i] += scalar_traits<S>::ratio(2, 1) / (ts[i] - ts[j]);
    for (size_t s = 0; s < z.size(); ++s)
      r[i] -= scalar_traits<S>::ratio(ms[s], 1) / (ts[i] - z[s]);
  }
  return r;
}

template <class S>
Matrix<S> bae_jacobian(const std::vector<S>& ts, const std::vector<S>& z,
                       const std::vector<int>& ms, const S& mu) {
  const int m = int(ts.size());
  const int nu = bethe_weight(ms, m);
  const S c = scalar_traits<S>::one() - mu + scalar_traits<S>::ratio(nu, 2);
  Matrix<S> j(m, m);
  for (int i = 0; i < m; ++i) {
    S diag = -c / (ts[i] * ts[i]);
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      S d = ts[i] - ts[k];
      S inv2 = scalar_traits<S>::ratio(2, 1) / (d * d);
      j(i, k) = inv2;
      diag -= inv2;
    }
    for (size_t s = 0; s < z.size(); ++s) {
      S d = ts[i] - z[s];
      diag += scalar_traits<S>::ratio(ms[s], 1) / (d * d);
    }
    j(i, i) = diag;
  }
  return j;
}

// Coefficients of omega(t, z) on the weight block V[M - 2m], in block basis
// order.  The basis tuple (l_1..l_n) is itself the composition of m, and the
// symmetrization is a sum over all m! assignments of roots to tensor slots.
template <class S>
std::vector<S> weight_function(const TensorSpace& sp, const std::vector<S>& ts,
                               const std::vector<S>& z) {
  if (int(z.size()) != sp.sites()) throw std::invalid_argument("weight_function: |z| != n");
  const int m = int(ts.size());
  const int nu = bethe_weight(sp.ms(), m);
  if (!sp.has_block(nu)) throw std::invalid_argument("weight_function: empty weight block");
  const auto& blk = sp.block(nu);
  std::vector<S> out;
  out.reserve(blk.size());
  std::vector<int> perm(m);
  for (int full_index : blk) {
    const std::vector<int>& l = sp.tuple(full_index);
    // site owning each of the m slots, in the unpermuted order
    std::vector<int> owner;
    for (int s = 0; s < sp.sites(); ++s)
      for (int r = 0; r < l[s]; ++r) owner.push_back(s);
    for (int i = 0; i < m; ++i) perm[i] = i;
    S total = scalar_traits<S>::zero();
    do {
      S term = scalar_traits<S>::one();
      for (int i = 0; i < m; ++i) term = term / (ts[perm[i]] - z[owner[i]]);
      total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (m == 0) total = scalar_traits<S>::one();  // empty product, single assignment
    out.push_back(total);
  }
  return out;
}

// k_s = (m_s/2) [ (mu - nu/2 + m_s/2) + sum_{p != s} m_p z_s/(z_s - z_p)
//                 + 2 sum_i z_s/(t_i - z_s) ]
template <class S>
std::vector<S> bethe_eigenvalues(const std::vector<S>& ts, const std::vector<S>& z,
                                 const std::vector<int>& ms, const S& mu) {
  const int nu = bethe_weight(ms, int(ts.size()));
  std::vector<S> ks;
  for (size_t s = 0; s < z.size(); ++s) {
    S acc = mu - scalar_traits<S>::ratio(nu, 2) + scalar_traits<S>::ratio(ms[s], 2);
    for (size_t p = 0; p < z.size(); ++p)
      if (p != s) acc += scalar_traits<S>::ratio(ms[p], 1) * z[s] / (z[s] - z[p]);
    for (const S& t : ts) acc += scalar_traits<S>::ratio(2, 1) * z[s] / (t - z[s]);
    ks.push_back(scalar_traits<S>::ratio(ms[s], 2) * acc);
  }
  return ks;
}

// max_s |K_s w - k_s w|_inf / |w|_inf for the weight-function vector w.
template <class S>
double eigenvector_defect(const TensorSpace& sp, const std::vector<S>& ts,
                          const std::vector<S>& z, const S& mu) {
  const int nu = bethe_weight(sp.ms(), int(ts.size()));
  std::vector<S> w = weight_function<S>(sp, ts, z);
  std::vector<S> ks = bethe_eigenvalues<S>(ts, z, sp.ms(), mu);
  double wnorm = max_abs(w);
  if (wnorm == 0) return std::numeric_limits<double>::infinity();
  double defect = 0;
  for (int s = 0; s < sp.sites(); ++s) {
    std::vector<S> kw = gaudin_operator<S>(sp, z, mu, s, nu).mat.apply(w);
    for (size_t i = 0; i < kw.size(); ++i)
      defect = std::max(defect, scalar_traits<S>::abs_est(kw[i] - ks[s] * w[i]));
  }
  return defect / wnorm;
}

// Scalar partial-fraction data of the second coefficient on a Bethe vector:
// c0 = -(mu + nu/2)^2/4, A_s = m_s(m_s+2)/4 + k_s, B_s = -m_s(m_s+2)/4,
// stored as 1x1 blocks so the Laurent helpers apply unchanged.
template <class S>
PartialFractionOperator<S> e2_scalar_pf(const std::vector<S>& ts, const std::vector<S>& z,
                                        const std::vector<int>& ms, const S& mu) {
  const int nu = bethe_weight(ms, int(ts.size()));
  std::vector<S> ks = bethe_eigenvalues<S>(ts, z, ms, mu);
  PartialFractionOperator<S> pf;
  pf.z = z;
  pf.pi_power = 2;
  S half_nu = scalar_traits<S>::ratio(nu, 2);
  pf.c0 = Matrix<S>::identity(1) * (-(mu + half_nu) * (mu + half_nu) * scalar_traits<S>::ratio(1, 4));
  for (size_t s = 0; s < z.size(); ++s) {
    S cas = scalar_traits<S>::ratio(ms[s] * (ms[s] + 2), 4);
    pf.A.push_back(Matrix<S>::identity(1) * (cas + ks[s]));
    pf.B.push_back(Matrix<S>::identity(1) * (-cas));
  }
  return pf;
}

// R(x) = x y'/y + (nu/2 - mu)/2 - sum_s (m_s/2) x/(x - z_s),  y = prod(x - t_i).
// The factorization statement is  E2 = -x R' - R^2  in pi_power = 2 units.
template <class S>
RationalFn<S> bethe_log_derivative(const std::vector<S>& ts, const std::vector<S>& z,
                                   const std::vector<int>& ms, const S& mu) {
  const int nu = bethe_weight(ms, int(ts.size()));
  Poly<S> x = Poly<S>::x();
  Poly<S> y = Poly<S>::from_roots(ts);
  RationalFn<S> r(x * y.derivative(), y);
  r = r + RationalFn<S>(Poly<S>::constant((scalar_traits<S>::ratio(nu, 2) - mu) *
                                          scalar_traits<S>::ratio(1, 2)),
                        Poly<S>::constant(scalar_traits<S>::one()));
  for (size_t s = 0; s < z.size(); ++s) {
    Poly<S> den = x - Poly<S>::constant(z[s]);
    r = r - RationalFn<S>(x * scalar_traits<S>::ratio(ms[s], 2), den);
  }
  return r;
}

struct FactorizationReport {
  bool exact_zero = false;  // meaningful for the exact backend only
  double defect = 0;        // max sample deviation (float) or 0/1 flag (exact)
};

template <class S>
FactorizationReport factorization_check(const std::vector<S>& ts, const std::vector<S>& z,
                                        const std::vector<int>& ms, const S& mu) {
  RationalFn<S> r = bethe_log_derivative<S>(ts, z, ms, mu);
  RationalFn<S> factored =
      RationalFn<S>(Poly<S>::x(), Poly<S>::constant(scalar_traits<S>::one())) * r.derivative() +
      r * r;
  PartialFractionOperator<S> pf = e2_scalar_pf<S>(ts, z, ms, mu);
  FactorizationReport rep;
  if constexpr (scalar_traits<S>::exact) {
    // E2 + x R' + R^2 == 0 as a rational function, by numerator cancellation.
    RationalFn<S> e2(Poly<S>::zero(), Poly<S>::constant(scalar_traits<S>::one()));
    e2 = e2 + RationalFn<S>(Poly<S>::constant(pf.c0(0, 0)),
                            Poly<S>::constant(scalar_traits<S>::one()));
    for (size_t s = 0; s < z.size(); ++s) {
      Poly<S> den = Poly<S>::x() - Poly<S>::constant(z[s]);
      // f_s = -z_s/(x - z_s), f_s^2 = z_s^2/(x - z_s)^2
      e2 = e2 + RationalFn<S>(Poly<S>::constant(-pf.A[s](0, 0) * z[s]), den);
      e2 = e2 + RationalFn<S>(Poly<S>::constant(pf.B[s](0, 0) * z[s] * z[s]), den * den);
    }
    RationalFn<S> diff = e2 + factored;
    rep.exact_zero = diff.is_zero();
    rep.defect = rep.exact_zero ? 0.0 : 1.0;
  } else {
    // Pointwise comparison at fixed off-pole samples; avoids evaluating a
    // cross-multiplied numerator whose coefficients are roundoff-inflated.
    double scale = 1;
    for (const S& zs : z) scale = std::max(scale, scalar_traits<S>::abs_est(zs));
    auto off_poles = [&](const S& x) {
      double d = std::min(scalar_traits<S>::abs_est(x), 1e9);
      for (const S& zs : z) d = std::min(d, scalar_traits<S>::abs_est(x - zs));
      for (const S& t : ts) d = std::min(d, scalar_traits<S>::abs_est(x - t));
      return d > 0.05 * scale;
    };
    RationalFn<S> rp = r.derivative();
    int used = 0;
    for (int k = 0; used < 7 && k < 64; ++k) {
      S x = scalar_traits<S>::from_rational(Rational(83 + 41 * k, 100)) * S(scale) +
            scalar_traits<S>::i() * S(0.37 * scale * (k + 1));
      if (!off_poles(x)) continue;
      ++used;
      S lhs = pf.eval(x)(0, 0);
      S rhs = -(x * rp.eval(x)) - r.eval(x) * r.eval(x);
      rep.defect = std::max(rep.defect, scalar_traits<S>::abs_est(lhs - rhs));
    }
    rep.exact_zero = false;
  }
  return rep;
}

// --- Numerical solver (float backend; defined in bethe_newton.cpp) --------

struct BetheSolveOptions {
  int starts = 0;           // 0 = automatic, based on the expected count
  int max_iter = 80;
  double newton_tol = 1e-12;
  double verify_tol = 1e-8;
  double dedup_tol = 1e-6;  // relative to the coordinate scale
  std::uint64_t seed = 1;
  int threads = 0;          // 0 = respect GAUDIN_LAB_THREADS, default 1
};

struct BetheSolution {
  std::vector<Complex> roots;       // sorted by (re, im)
  double residual = 0;              // max |BAE_i|
  double jac_sigma_min = 0;         // smallest singular value of the Jacobian
  std::vector<Complex> eigenvalues; // k_s per site
};

struct BetheSolveReport {
  std::vector<BetheSolution> solutions;
  int expected = 0;               // dim V[nu]
  bool complete = false;          // found exactly `expected` distinct solutions
  bool assumption_violated = false;  // mu in nu/2 + Z_{>0}: basis theorem void
  int starts_used = 0;
};

BetheSolveReport solve_bethe(const std::vector<Complex>& z, const std::vector<int>& ms,
                             Complex mu, int num_roots, const BetheSolveOptions& opt = {});

}  // namespace gaudin
