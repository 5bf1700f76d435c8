#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "gaudin/bethe_solver.hpp"
#include "gaudin/threads.hpp"

namespace gaudin {

namespace {

using EMat = Eigen::MatrixXcd;
using EVec = Eigen::VectorXcd;

// All (l_1..l_n) with 0 <= l_s <= m_s and sum = m; cluster starts place l_s
// roots near z_s, which is where solutions sit for moderate mu.
std::vector<std::vector<int>> compositions(const std::vector<int>& ms, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(ms.size(), 0);
  auto rec = [&](auto&& self, size_t s, int left) -> void {
    if (s == ms.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int l = 0; l <= std::min(ms[s], left); ++l) {
      cur[s] = l;
      self(self, s + 1, left - l);
    }
    cur[s] = 0;
  };
  rec(rec, 0, m);
  return out;
}

void sort_roots(std::vector<Complex>& t) {
  std::sort(t.begin(), t.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Multiset match with a greedy nearest pairing; robust against sort-order
// flips between nearly tied coordinates.
bool same_solution(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  const size_t m = a.size();
  std::vector<bool> used(m, false);
  for (size_t i = 0; i < m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    size_t arg = m;
    for (size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      double d = std::abs(a[i] - b[j]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    if (arg == m || best > tol) return false;
    used[arg] = true;
  }
  return true;
}

struct StartContext {
  const std::vector<Complex>& z;
  const std::vector<int>& ms;
  Complex mu;
  int m;
  double scale;
  const std::vector<std::vector<int>>& comps;
  const BetheSolveOptions& opt;
};

// Three start families: pole-cluster compositions, a uniform box, and a
// log-radial spray.  The box alone starves roots of small modulus (the 1/t
// term pins solutions near the origin whenever mu is close to 1 + nu/2),
// while the radial family reaches moduli from 1e-3 to ~3 times the scale.
std::vector<Complex> initial_guess(const StartContext& cx, int idx, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Complex> t;
  const int family = cx.comps.empty() ? 1 + (idx & 1) : idx % 3;
  if (family == 0) {
    const auto& l = cx.comps[size_t(idx / 3) % cx.comps.size()];
    for (size_t s = 0; s < l.size(); ++s)
      for (int r = 0; r < l[s]; ++r) {
        Complex jitter(uni(rng), uni(rng));
        t.push_back(cx.z[s] * (1.0 + 0.25 * jitter) + 0.02 * cx.scale * Complex(uni(rng), uni(rng)));
      }
  } else if (family == 1) {
    while (int(t.size()) < cx.m) {
      Complex c(uni(rng), uni(rng));
      if (std::abs(c) < 0.02) continue;
      t.push_back(2.0 * cx.scale * c);
    }
  } else {
    for (int r = 0; r < cx.m; ++r) {
      const double radius = cx.scale * std::pow(10.0, -3.0 + 1.75 * (uni(rng) + 1.0));
      const double angle = 3.14159265358979323846 * uni(rng);
      t.push_back(radius * Complex(std::cos(angle), std::sin(angle)));
    }
  }
  return t;
}

bool distances_ok(const StartContext& cx, const std::vector<Complex>& t, double rel) {
  const double lim = rel * cx.scale;
  for (size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i]) < lim || std::abs(t[i]) > 1e7 * cx.scale) return false;
    for (const Complex& zs : cx.z)
      if (std::abs(t[i] - zs) < lim) return false;
    for (size_t j = i + 1; j < t.size(); ++j)
      if (std::abs(t[i] - t[j]) < lim) return false;
  }
  return true;
}

// One Newton run; empty result means no verified solution from this start.
std::vector<Complex> newton_run(const StartContext& cx, int idx) {
  std::mt19937_64 rng(cx.opt.seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(idx + 1)));
  std::vector<Complex> t = initial_guess(cx, idx, rng);
  if (!distances_ok(cx, t, 1e-9)) return {};
  EMat j(cx.m, cx.m);
  EVec r(cx.m), d(cx.m);
  bool converged = false;
  for (int iter = 0; iter < cx.opt.max_iter; ++iter) {
    std::vector<Complex> res = bae_residual<Complex>(t, cx.z, cx.ms, cx.mu);
    double rmax = 0;
    for (int i = 0; i < cx.m; ++i) rmax = std::max(rmax, std::abs(res[i]));
    if (rmax < cx.opt.newton_tol) {
      converged = true;
      break;
    }
    Matrix<Complex> jac = bae_jacobian<Complex>(t, cx.z, cx.ms, cx.mu);
    for (int a = 0; a < cx.m; ++a) {
      r(a) = res[a];
      for (int b = 0; b < cx.m; ++b) j(a, b) = jac(a, b);
    }
    d = j.partialPivLu().solve(r);
    if (!d.allFinite()) return {};
    for (int a = 0; a < cx.m; ++a) t[a] -= d(a);
    if (!distances_ok(cx, t, 1e-9)) return {};
  }
  if (!converged) return {};
  // polish: two more steps drive the residual to machine precision
  for (int k = 0; k < 2; ++k) {
    std::vector<Complex> res = bae_residual<Complex>(t, cx.z, cx.ms, cx.mu);
    Matrix<Complex> jac = bae_jacobian<Complex>(t, cx.z, cx.ms, cx.mu);
    for (int a = 0; a < cx.m; ++a) {
      r(a) = res[a];
      for (int b = 0; b < cx.m; ++b) j(a, b) = jac(a, b);
    }
    d = j.partialPivLu().solve(r);
    if (!d.allFinite()) break;
    for (int a = 0; a < cx.m; ++a) t[a] -= d(a);
  }
  if (!distances_ok(cx, t, 1e-8)) return {};
  std::vector<Complex> res = bae_residual<Complex>(t, cx.z, cx.ms, cx.mu);
  double rmax = 0;
  for (int i = 0; i < cx.m; ++i) rmax = std::max(rmax, std::abs(res[i]));
  if (rmax > cx.opt.verify_tol) return {};
  sort_roots(t);
  return t;
}

BetheSolution finish_solution(const StartContext& cx, std::vector<Complex> roots) {
  BetheSolution sol;
  std::vector<Complex> res = bae_residual<Complex>(roots, cx.z, cx.ms, cx.mu);
  sol.residual = 0;
  for (const Complex& v : res) sol.residual = std::max(sol.residual, std::abs(v));
  if (cx.m == 0) {
    sol.jac_sigma_min = std::numeric_limits<double>::infinity();
  } else {
    Matrix<Complex> jac = bae_jacobian<Complex>(roots, cx.z, cx.ms, cx.mu);
    EMat j(cx.m, cx.m);
    for (int a = 0; a < cx.m; ++a)
      for (int b = 0; b < cx.m; ++b) j(a, b) = jac(a, b);
    Eigen::JacobiSVD<EMat> svd(j);
    sol.jac_sigma_min = svd.singularValues().minCoeff();
  }
  sol.eigenvalues = bethe_eigenvalues<Complex>(roots, cx.z, cx.ms, cx.mu);
  sol.roots = std::move(roots);
  return sol;
}

}  // namespace

BetheSolveReport solve_bethe(const std::vector<Complex>& z, const std::vector<int>& ms,
                             Complex mu, int num_roots, const BetheSolveOptions& opt) {
  if (z.size() != ms.size()) throw std::invalid_argument("solve_bethe: |z| != |ms|");
  require_admissible_poles(z);
  if (num_roots < 0) throw std::invalid_argument("solve_bethe: negative root count");
  TensorSpace sp(ms);
  const int nu = bethe_weight(ms, num_roots);
  if (!sp.has_block(nu)) throw std::invalid_argument("solve_bethe: empty weight block");

  BetheSolveReport rep;
  rep.expected = sp.block_dim(nu);
  rep.assumption_violated =
      is_near_integer_at_least(mu - Complex(nu / 2.0, 0), 1, opt.verify_tol);

  double scale = 1;
  for (const Complex& zs : z) scale = std::max(scale, std::abs(zs));

  if (num_roots == 0) {
    StartContext cx{z, ms, mu, 0, scale, {}, opt};
    rep.solutions.push_back(finish_solution(cx, {}));
    rep.complete = (rep.expected == 1);
    return rep;
  }

  auto comps = compositions(ms, num_roots);
  StartContext cx{z, ms, mu, num_roots, scale, comps, opt};

  const int total_starts = opt.starts > 0 ? opt.starts : std::max(256, 64 * rep.expected);
  const int chunk = 64;  // fixed: early stopping must not depend on threads
  const int threads = resolve_threads(opt.threads);
  const double dedup = opt.dedup_tol * scale;

  for (int base = 0; base < total_starts && !rep.complete; base += chunk) {
    const int hi = std::min(base + chunk, total_starts);
    std::vector<std::vector<Complex>> found(size_t(hi - base));
    if (threads <= 1) {
      for (int idx = base; idx < hi; ++idx) found[idx - base] = newton_run(cx, idx);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
          for (int idx = base + w; idx < hi; idx += threads)
            found[idx - base] = newton_run(cx, idx);
        });
      for (auto& th : pool) th.join();
    }
    for (int idx = base; idx < hi; ++idx) {
      rep.starts_used = idx + 1;
      auto& roots = found[idx - base];
      if (roots.empty()) continue;
      bool dup = false;
      for (const auto& sol : rep.solutions)
        if (same_solution(sol.roots, roots, dedup)) {
          dup = true;
          break;
        }
      if (dup) continue;
      rep.solutions.push_back(finish_solution(cx, std::move(roots)));
      if (int(rep.solutions.size()) == rep.expected) {
        rep.complete = true;
        break;
      }
    }
  }

  std::sort(rep.solutions.begin(), rep.solutions.end(),
            [](const BetheSolution& a, const BetheSolution& b) {
              for (size_t i = 0; i < a.roots.size(); ++i) {
                if (a.roots[i].real() != b.roots[i].real())
                  return a.roots[i].real() < b.roots[i].real();
                if (a.roots[i].imag() != b.roots[i].imag())
                  return a.roots[i].imag() < b.roots[i].imag();
              }
              return false;
            });
  rep.complete = int(rep.solutions.size()) == rep.expected;
  return rep;
}

}  // namespace gaudin
