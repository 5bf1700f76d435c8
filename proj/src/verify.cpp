#include "gaudin/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "gaudin/bethe_solver.hpp"
#include "gaudin/gaudin_ops.hpp"
#include "gaudin/kzb_series.hpp"
#include "gaudin/matrix.hpp"
#include "gaudin/poly_roots.hpp"
#include "gaudin/quasipoly_wronski.hpp"
#include "gaudin/repn_sl2.hpp"
#include "gaudin/threads.hpp"
#include "gaudin/wronski_fiber.hpp"

namespace gaudin {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Run one check body; exceptions become failures carrying the message.
template <class F>
void add_check(std::vector<CheckResult>& out, const char* anchor, const char* name, F&& body) {
  CheckResult r;
  r.anchor = anchor;
  r.name = name;
  r.status = "pass";
  const Clock::time_point t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.status = "fail";
    r.note = e.what();
  }
  r.wall_ms = ms_since(t0);
  out.push_back(std::move(r));
}

void skip(CheckResult& r, const std::string& why) {
  r.status = "skipped-assumption";
  r.note = why;
}

// Exact scalars must witness an identically zero defect; floats get the gate.
template <class S>
void gate_defect(CheckResult& r, double defect, bool exact_zero, double tol) {
  r.defect = defect;
  const bool ok = scalar_traits<S>::exact ? exact_zero : defect < tol;
  if (!ok) r.status = "fail";
}

template <class S>
void gate_matrix(CheckResult& r, const Matrix<S>& d, double tol) {
  double mx = std::max(r.defect, d.max_abs());
  gate_defect<S>(r, mx, r.status != "fail" && d.is_zero(), tol);
}

template <class S>
S conv(const CRat& v);
template <>
CRat conv<CRat>(const CRat& v) {
  return v;
}
template <>
Complex conv<Complex>(const CRat& v) {
  return v.to_complex();
}

template <class S>
std::vector<S> conv_vec(const std::vector<CRat>& v) {
  std::vector<S> out;
  out.reserve(v.size());
  for (const CRat& x : v) out.push_back(conv<S>(x));
  return out;
}

std::vector<Complex> to_cvec(const std::vector<CRat>& v) { return conv_vec<Complex>(v); }

bool in_integers(const CRat& v) { return is_near_integer_at_least(v, -(1L << 40)); }

bool in_half_weight_lattice(const CRat& mu, int M) {
  return in_integers(mu - scalar_traits<CRat>::ratio(M, 2));
}

std::string crat_str(const CRat& v) { return v.str(); }

// ---------------------------------------------------------------------------
// repn suite

template <class S>
void repn_checks(const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  TensorSpace sp(cfg.ms);
  const int M = sp.total_weight();

  add_check(out, "weight-block-symmetry",
            "weight blocks pair off under nu <-> -nu and fill the space", [&](CheckResult& r) {
              int total = 0;
              bool ok = true;
              for (int nu : sp.weights()) {
                total += sp.block_dim(nu);
                ok = ok && sp.block_dim(nu) == sp.block_dim(-nu);
              }
              if (!ok || total != sp.dim()) r.status = "fail";
              r.note = "dim " + std::to_string(sp.dim());
            });

  add_check(out, "weyl-involution-square", "sigma squares to (-1)^M on the whole space",
            [&](CheckResult& r) {
              Matrix<S> sig = weyl_sigma_full<S>(sp);
              Matrix<S> expect = Matrix<S>::identity(sp.dim()) *
                                 scalar_traits<S>::ratio(M % 2 == 1 ? -1 : 1, 1);
              gate_matrix<S>(r, sig * sig - expect, cfg.tol);
            });

  add_check(out, "dynamical-weyl-composition",
            "A at the reflected argument inverts A up to the exchange scalar",
            [&](CheckResult& r) {
              if (in_half_weight_lattice(cfg.mu, M))
                return skip(r, "mu = " + crat_str(cfg.mu) + " lies in M/2 + Z");
              const S mu = conv<S>(cfg.mu);
              int blocks = 0;
              for (int nu : sp.weights()) {
                const S half_nu = scalar_traits<S>::ratio(nu, 2);
                const S one = scalar_traits<S>::one();
                auto fwd = dynamical_weyl_A<S>(sp, mu + half_nu - one, nu);
                auto back = dynamical_weyl_A<S>(sp, -mu - half_nu - one, -nu);
                S scale = (mu - half_nu) / (mu + half_nu);
                if (M % 2 == 1) scale = -scale;
                Matrix<S> expect = Matrix<S>::identity(sp.block_dim(nu)) * scale;
                gate_matrix<S>(r, back.mat * fwd.mat - expect, cfg.tol);
                ++blocks;
              }
              r.note = std::to_string(blocks) + " blocks";
            });
}

// ---------------------------------------------------------------------------
// gaudin suite

template <class S>
void gaudin_checks(const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  TensorSpace sp(cfg.ms);
  const int M = sp.total_weight();
  const S mu = conv<S>(cfg.mu);
  const std::vector<S> z = conv_vec<S>(cfg.z);

  add_check(out, "gaudin-commutativity", "the operators K_s commute on every weight block",
            [&](CheckResult& r) {
              int pairs = 0;
              for (int nu : sp.weights()) {
                std::vector<Matrix<S>> k;
                for (int s = 0; s < sp.sites(); ++s)
                  k.push_back(gaudin_operator<S>(sp, z, mu, s, nu).mat);
                for (size_t a = 0; a < k.size(); ++a)
                  for (size_t b = a + 1; b < k.size(); ++b) {
                    gate_matrix<S>(r, k[a].commutator(k[b]), cfg.tol);
                    ++pairs;
                  }
              }
              r.note = std::to_string(pairs) + " commutators";
            });

  add_check(out, "gaudin-sum-rule", "sum of the K_s acts as (mu/2) times the weight",
            [&](CheckResult& r) {
              for (int nu : sp.weights()) {
                Matrix<S> sum(sp.block_dim(nu), sp.block_dim(nu));
                for (int s = 0; s < sp.sites(); ++s)
                  sum += gaudin_operator<S>(sp, z, mu, s, nu).mat;
                S scale = mu * scalar_traits<S>::ratio(nu, 2);
                gate_matrix<S>(r, sum - Matrix<S>::identity(sp.block_dim(nu)) * scale, cfg.tol);
              }
            });

  add_check(out, "weyl-intertwiner", "A exchanges K_s(mu) on V[nu] with K_s(-mu) on V[-nu]",
            [&](CheckResult& r) {
              if (in_half_weight_lattice(cfg.mu, M))
                return skip(r, "mu = " + crat_str(cfg.mu) + " lies in M/2 + Z");
              for (int nu : sp.weights()) {
                IntertwinerReport rep = intertwiner_check<S>(sp, z, mu, nu);
                gate_defect<S>(r, std::max(r.defect, rep.max_defect),
                               r.status != "fail" && rep.exact, cfg.tol);
              }
            });

  add_check(out, "characteristic-determinant",
            "row-ordered determinant expansion reproduces D1 = 0 and the stored D2",
            [&](CheckResult& r) {
              if (sp.dim() > 64)
                return skip(r, "dimension " + std::to_string(sp.dim()) + " above determinant gate 64");
              CdetReport rep = cdet_cross_check<CRat>(sp, cfg.z, cfg.mu);
              if (!rep.d1_is_zero || !rep.d2_matches) {
                r.status = "fail";
                r.note = rep.mismatch.empty() ? "D1 does not vanish" : rep.mismatch;
              } else {
                r.note = "exact arithmetic";
              }
            });
}

// ---------------------------------------------------------------------------
// bethe suite

BetheSolveOptions solve_options(const VerifyConfig& cfg) {
  BetheSolveOptions opt;
  opt.seed = cfg.seed;
  opt.starts = cfg.starts;
  opt.threads = cfg.threads;
  return opt;
}

void bethe_checks(const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  TensorSpace sp(cfg.ms);
  const int m = cfg.num_roots;
  const int nu = sp.total_weight() - 2 * m;
  const Complex mu = cfg.mu.to_complex();
  const std::vector<Complex> z = to_cvec(cfg.z);

  BetheSolveReport rep = solve_bethe(z, cfg.ms, mu, m, solve_options(cfg));
  const std::string assumed =
      "mu = " + crat_str(cfg.mu) + " lies in nu/2 + Z_{>0}: completeness not claimed";

  add_check(out, "bethe-root-count", "the solver finds dim V[nu] distinct admissible root sets",
            [&](CheckResult& r) {
              if (rep.assumption_violated) return skip(r, assumed);
              r.note = std::to_string(rep.solutions.size()) + " of " +
                       std::to_string(rep.expected) + " expected, " +
                       std::to_string(rep.starts_used) + " starts";
              if (!rep.complete) r.status = "fail";
            });

  add_check(out, "bethe-equation-residual", "every reported root set satisfies the equations",
            [&](CheckResult& r) {
              if (rep.assumption_violated) return skip(r, assumed);
              for (const BetheSolution& sol : rep.solutions)
                r.defect = std::max(r.defect, sol.residual);
              if (r.defect >= 1e-10) r.status = "fail";
              r.note = "gate 1e-10";
            });

  add_check(out, "bethe-vector-independence",
            "the weight-function vectors of the solutions span V[nu]", [&](CheckResult& r) {
              if (rep.assumption_violated) return skip(r, assumed);
              if (rep.solutions.empty()) {
                r.status = "fail";
                r.note = "no solutions to test";
                return;
              }
              const int d = sp.block_dim(nu);
              Eigen::MatrixXcd a(d, int(rep.solutions.size()));
              for (size_t c = 0; c < rep.solutions.size(); ++c) {
                std::vector<Complex> w = weight_function<Complex>(sp, rep.solutions[c].roots, z);
                double norm = max_abs(w);
                if (norm == 0) {
                  r.status = "fail";
                  r.note = "vanishing weight-function vector";
                  return;
                }
                for (int i = 0; i < d; ++i) a(i, int(c)) = w[size_t(i)] / norm;
              }
              Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
              const double sigma_min = svd.singularValues().minCoeff();
              std::ostringstream note;
              note << "smallest singular value " << sigma_min << ", gate 1e-8";
              r.note = note.str();
              if (sigma_min <= 1e-8) {
                r.status = "fail";
                r.defect = 1e-8 - sigma_min;
              }
            });

  add_check(out, "bethe-eigenvector", "each weight-function vector is a joint K_s eigenvector",
            [&](CheckResult& r) {
              if (rep.assumption_violated) return skip(r, assumed);
              for (const BetheSolution& sol : rep.solutions)
                r.defect = std::max(r.defect, eigenvector_defect(sp, sol.roots, z, mu));
              if (r.defect >= cfg.tol) r.status = "fail";
            });

  add_check(out, "gaudin-eigenvalue-sum", "the eigenvalues of one solution sum to mu nu / 2",
            [&](CheckResult& r) {
              if (rep.assumption_violated) return skip(r, assumed);
              const Complex target = mu * double(nu) / 2.0;
              for (const BetheSolution& sol : rep.solutions) {
                Complex sum = 0;
                for (const Complex& k : sol.eigenvalues) sum += k;
                r.defect = std::max(r.defect, std::abs(sum - target));
              }
              if (r.defect >= cfg.tol) r.status = "fail";
            });

  add_check(out, "scalar-factorization",
            "E2 + x R' + R^2 vanishes for the logarithmic derivative of each solution",
            [&](CheckResult& r) {
              if (rep.assumption_violated) return skip(r, assumed);
              for (const BetheSolution& sol : rep.solutions) {
                FactorizationReport f = factorization_check(sol.roots, z, cfg.ms, mu);
                r.defect = std::max(r.defect, f.defect);
              }
              if (r.defect >= cfg.tol) r.status = "fail";
            });
}

// ---------------------------------------------------------------------------
// wronski suite

void wronski_checks(const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  TensorSpace sp(cfg.ms);
  const int n = sp.sites();
  const int m = cfg.num_roots;
  const int nu = sp.total_weight() - 2 * m;
  const Complex mu = cfg.mu.to_complex();
  const std::vector<Complex> z = to_cvec(cfg.z);
  const CRat kappa = cfg.mu - scalar_traits<CRat>::ratio(nu, 2);
  const std::string kappa_gate =
      "mu - nu/2 = " + crat_str(kappa) + " lies in Z: dual exponent degenerates";

  BetheSolveReport rep = solve_bethe(z, cfg.ms, mu, m, solve_options(cfg));

  add_check(out, "dual-polynomial-bae", "the dual polynomial's roots solve the system at -mu",
            [&](CheckResult& r) {
              if (in_integers(kappa)) return skip(r, kappa_gate);
              if (rep.assumption_violated) return skip(r, "solver assumption violated");
              if (rep.solutions.empty()) {
                r.status = "fail";
                r.note = "no solutions to test";
                return;
              }
              for (const BetheSolution& sol : rep.solutions) {
                Poly<Complex> y = Poly<Complex>::from_roots(sol.roots);
                DualPolyResult<Complex> d = dual_polynomial(y, z, cfg.ms, mu);
                if (!d.unique) {
                  r.status = "fail";
                  r.note = "dual system not determined";
                  return;
                }
                r.defect = std::max(r.defect, d.residual);
                std::vector<Complex> troots = find_roots(d.ytilde);
                r.defect = std::max(r.defect, max_abs(bae_residual(troots, z, cfg.ms, -mu)));
              }
              if (r.defect >= cfg.tol) r.status = "fail";
            });

  add_check(out, "double-dual-involution", "dualizing twice returns the original polynomial",
            [&](CheckResult& r) {
              if (in_integers(kappa)) return skip(r, kappa_gate);
              if (rep.assumption_violated) return skip(r, "solver assumption violated");
              for (const BetheSolution& sol : rep.solutions) {
                Poly<Complex> y = Poly<Complex>::from_roots(sol.roots);
                DualPolyResult<Complex> d = dual_polynomial(y, z, cfg.ms, mu);
                DualPolyResult<Complex> dd = dual_polynomial(d.ytilde, z, cfg.ms, -mu);
                r.defect = std::max(r.defect, (dd.ytilde - y).max_abs());
              }
              if (r.defect >= 1e-10) r.status = "fail";
              r.note = "gate 1e-10";
            });

  // The fiber checks run on the spin-1/2 chain attached to the Wronskian.
  const bool all_ones = std::all_of(cfg.ms.begin(), cfg.ms.end(), [](int v) { return v == 1; });
  const std::string ones_gate = "fiber checks need unit site weights";

  WronskiFiberReport fib;
  bool fiber_ready = false;
  const Complex zeta = kappa.to_complex() / 2.0;
  std::vector<Complex> a_target;
  if (all_ones && !in_integers(kappa)) {
    // deterministic generic target drawn from the seed
    std::mt19937_64 rng(cfg.seed ^ 0x77c0ffee);
    auto draw = [&]() {
      for (;;) {
        double re = (double(rng() % 181) - 90.0) / 10.0;
        double im = (double(rng() % 181) - 90.0) / 10.0;
        if (std::abs(re) + std::abs(im) >= 0.3) return Complex(re, im);
      }
    };
    for (int s = 0; s < n; ++s) a_target.push_back(draw());
    fib = wronski_fiber(a_target, zeta, m, n - m, solve_options(cfg));
    fiber_ready = true;
  }

  add_check(out, "wronski-fiber-degree",
            "the Wronski map has binomial(n, m) preimages over a generic point",
            [&](CheckResult& r) {
              if (!all_ones) return skip(r, ones_gate);
              if (in_integers(kappa)) return skip(r, kappa_gate);
              if (!fib.generic) {
                r.status = "fail";
                r.note = fib.message;
                return;
              }
              r.note = std::to_string(fib.points.size()) + " of " +
                       std::to_string(fib.expected) + " expected";
              if (!fib.complete) {
                r.status = "fail";
                return;
              }
              for (const FiberPoint& pt : fib.points)
                r.defect = std::max({r.defect, pt.sigma_residual, pt.dual_residual});
              if (r.defect >= cfg.tol) r.status = "fail";
            });

  add_check(out, "kernel-operator-dictionary",
            "the kernel operator of each pair matches the conjugated fundamental operator",
            [&](CheckResult& r) {
              if (!fiber_ready) return skip(r, all_ones ? kappa_gate : ones_gate);
              if (!fib.complete) return skip(r, "fiber incomplete");
              const std::vector<int> ones(size_t(n), 1);
              const Complex fiber_mu = 2.0 * zeta + double(nu) / 2.0;
              for (const FiberPoint& pt : fib.points) {
                KernelOperator<Complex> kop = kernel_operator(pt.pair);
                ScalarSecondOrder<Complex> g = kernel_canonical_coeffs(kop, fib.b);
                ScalarSecondOrder<Complex> f = scalar_coeffs(conjugated_operator(
                    e2_scalar_pf<Complex>(pt.sol.roots, fib.b, ones, fiber_mu), ones));
                r.defect = std::max(r.defect, std::abs(g.cx1 - f.cx1));
                r.defect = std::max(r.defect, std::abs(g.cx2 - f.cx2));
                for (size_t s = 0; s < fib.b.size(); ++s)
                  r.defect = std::max(r.defect, std::abs(g.cz1[s] - f.cz1[s]));
              }
              if (r.defect >= cfg.tol) r.status = "fail";
            });

  add_check(out, "weyl-transposition-collinearity",
            "A maps each weight-function vector onto the transposed pair's vector",
            [&](CheckResult& r) {
              if (!fiber_ready) return skip(r, all_ones ? kappa_gate : ones_gate);
              if (!fib.complete) return skip(r, "fiber incomplete");
              TensorSpace chain(std::vector<int>(size_t(n), 1));
              const Complex fiber_mu = 2.0 * zeta + double(nu) / 2.0;
              auto aop = dynamical_weyl_A<Complex>(chain, fiber_mu + double(nu) / 2.0 - 1.0, nu);
              for (const FiberPoint& pt : fib.points) {
                std::vector<Complex> lhs =
                    aop.mat.apply(weight_function<Complex>(chain, pt.sol.roots, fib.b));
                std::vector<Complex> rhs = weight_function<Complex>(chain, pt.dual_roots, fib.b);
                r.defect = std::max(r.defect, collinearity_defect(lhs, rhs));
              }
              if (r.defect >= cfg.tol) r.status = "fail";
            });

  add_check(out, "joint-eigenvalue-dictionary",
            "fiber values of the kernel coefficients match the joint operator spectrum",
            [&](CheckResult& r) {
              if (!fiber_ready) return skip(r, all_ones ? kappa_gate : ones_gate);
              if (!fib.complete) return skip(r, "fiber incomplete");
              TensorSpace chain(std::vector<int>(size_t(n), 1));
              const std::vector<int> ones(size_t(n), 1);
              const Complex fiber_mu = 2.0 * zeta + double(nu) / 2.0;
              const int d = chain.block_dim(nu);
              ConjugatedOperator<Complex> conj = conjugated_operator(
                  d2_partial_fractions<Complex>(chain, fib.b, fiber_mu, nu), ones);
              std::vector<Matrix<Complex>> f2j;
              for (int j = 2; j <= n + 2; ++j) f2j.push_back(f2_laurent(conj, j));

              Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(d, d);
              for (size_t k = 0; k < f2j.size(); ++k) {
                const Complex w(std::cos(0.9 * double(k) + 0.4), std::sin(1.3 * double(k) - 0.7));
                for (int rr = 0; rr < d; ++rr)
                  for (int cc = 0; cc < d; ++cc) combo(rr, cc) += w * f2j[k](rr, cc);
              }
              Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(combo);
              if (es.info() != Eigen::Success) {
                r.status = "fail";
                r.note = "eigensolver did not converge";
                return;
              }
              std::vector<std::vector<Complex>> spectra(static_cast<size_t>(d));
              for (int v = 0; v < d; ++v) {
                Eigen::VectorXcd vec = es.eigenvectors().col(v);
                for (size_t k = 0; k < f2j.size(); ++k) {
                  Eigen::MatrixXcd fm(d, d);
                  for (int rr = 0; rr < d; ++rr)
                    for (int cc = 0; cc < d; ++cc) fm(rr, cc) = f2j[k](rr, cc);
                  spectra[size_t(v)].push_back(
                      (vec.adjoint() * fm * vec)(0, 0) / (vec.adjoint() * vec)(0, 0).real());
                }
              }
              std::vector<bool> used(size_t(d), false);
              for (const FiberPoint& pt : fib.points) {
                KernelOperator<Complex> kop = kernel_operator(pt.pair);
                std::vector<Complex> vals;
                for (int j = 2; j <= n + 2; ++j) vals.push_back(g_laurent_coeffs(kop, 2, j));
                double best = 1e300;
                int best_idx = -1;
                for (int v = 0; v < d; ++v) {
                  if (used[size_t(v)]) continue;
                  double dist = 0;
                  for (size_t k = 0; k < vals.size(); ++k)
                    dist = std::max(dist, std::abs(vals[k] - spectra[size_t(v)][k]));
                  if (dist < best) {
                    best = dist;
                    best_idx = v;
                  }
                }
                if (best_idx < 0) {
                  r.status = "fail";
                  r.note = "more fiber points than eigenvectors";
                  return;
                }
                used[size_t(best_idx)] = true;
                r.defect = std::max(r.defect, best);
              }
              if (r.defect >= 1e-7) r.status = "fail";
              r.note = "gate 1e-7";
            });
}

// ---------------------------------------------------------------------------
// kzb suite

template <class S>
std::vector<S> kzb_seed_vector(int d) {
  std::vector<S> v(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    v[size_t(j)] = scalar_traits<S>::ratio(2 * j + 1, j + 2) +
                   scalar_traits<S>::i() * scalar_traits<S>::ratio((j % 3) - 1, 3);
  return v;
}

template <class S>
void kzb_checks(const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  TensorSpace sp(cfg.ms);
  const std::string mu_gate = "mu = " + crat_str(cfg.mu) + " lies in Z";
  const bool gated = in_integers(cfg.mu);
  const bool has_zero = sp.has_block(0);
  const std::string block_gate = "total weight is odd: no zero-weight block";

  std::optional<KzbOperators<S>> built;
  LambdaSeriesVector<S> psi;
  std::string build_error;
  const S mu = conv<S>(cfg.mu);
  const std::vector<S> z = conv_vec<S>(cfg.z);
  if (has_zero && !gated) {
    try {
      built.emplace(kzb_operators<S>(sp));
      psi = build_eigenfunction(*built, kzb_seed_vector<S>(built->dim), mu, cfg.K);
    } catch (const std::exception& e) {
      build_error = e.what();
    }
  }

  auto gate = [&](CheckResult& r) {
    if (!has_zero) {
      skip(r, block_gate);
      return true;
    }
    if (gated) {
      skip(r, mu_gate);
      return true;
    }
    if (!build_error.empty()) {
      r.status = "fail";
      r.note = build_error;
      return true;
    }
    return false;
  };

  add_check(out, "kzb-h0-eigenvalue",
            "the constructed series is an H_0 eigenfunction through the cutoff",
            [&](CheckResult& r) {
              if (gate(r)) return;
              LambdaSeriesVector<S> d = h0_eigenvalue_defect(*built, psi);
              gate_defect<S>(r, lambda_max_abs(d), lambda_is_zero(d), cfg.tol);
              r.note = "K = " + std::to_string(cfg.K);
            });

  add_check(out, "kzb-hs-transport", "H_s acts on eigenfunctions through the operators K_s",
            [&](CheckResult& r) {
              if (gate(r)) return;
              for (int s = 0; s < sp.sites(); ++s) {
                LambdaSeriesVector<S> d = hs_action_defect(*built, psi, s, z);
                gate_defect<S>(r, std::max(r.defect, lambda_max_abs(d)),
                               r.status != "fail" && lambda_is_zero(d), cfg.tol);
              }
            });

  add_check(out, "kzb-hs-zero-sum", "the H_s sum to zero on arbitrary truncated series",
            [&](CheckResult& r) {
              if (gate(r)) return;
              LambdaSeriesVector<S> raw;
              raw.mu = mu;
              raw.K = cfg.K;
              raw.pi_power = 0;
              std::vector<S> v = kzb_seed_vector<S>(built->dim);
              for (int k = 0; k <= cfg.K; ++k) {
                std::vector<S> slot(v.size());
                for (size_t j = 0; j < v.size(); ++j)
                  slot[j] = v[(j + size_t(k)) % v.size()] + scalar_traits<S>::ratio(k, k + 1);
                raw.coeffs.push_back(std::move(slot));
              }
              LambdaSeriesVector<S> d = hs_sum_defect(*built, raw, z);
              gate_defect<S>(r, lambda_max_abs(d), lambda_is_zero(d), cfg.tol);
              LambdaSeriesVector<S> de = hs_sum_defect(*built, psi, z);
              gate_defect<S>(r, std::max(r.defect, lambda_max_abs(de)),
                             r.status != "fail" && lambda_is_zero(de), cfg.tol);
            });

  add_check(out, "kzb-c2-transport",
            "the quadratic operator acts through the stored partial-fraction data",
            [&](CheckResult& r) {
              if (gate(r)) return;
              const S half = scalar_traits<S>::ratio(1, 2);
              for (const S& x : {scalar_traits<S>::ratio(-3, 7),
                                 scalar_traits<S>::ratio(9, 2) + half * scalar_traits<S>::i()}) {
                LambdaSeriesVector<S> d = c2_action_defect(*built, psi, x, z);
                gate_defect<S>(r, std::max(r.defect, lambda_max_abs(d)),
                               r.status != "fail" && lambda_is_zero(d), cfg.tol);
              }
            });

  add_check(out, "kzb-scattering-shadow",
            "the exchange operator intertwines the zero-weight systems at mu and -mu",
            [&](CheckResult& r) {
              if (gate(r)) return;
              IntertwinerReport rep = intertwiner_check<S>(sp, z, mu, 0);
              gate_defect<S>(r, rep.max_defect, rep.exact, cfg.tol);
            });
}

void run_one(const std::string& suite, const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  if (suite == "repn") {
    cfg.exact ? repn_checks<CRat>(cfg, out) : repn_checks<Complex>(cfg, out);
  } else if (suite == "gaudin") {
    cfg.exact ? gaudin_checks<CRat>(cfg, out) : gaudin_checks<Complex>(cfg, out);
  } else if (suite == "bethe") {
    bethe_checks(cfg, out);
  } else if (suite == "wronski") {
    wronski_checks(cfg, out);
  } else if (suite == "kzb") {
    cfg.exact ? kzb_checks<CRat>(cfg, out) : kzb_checks<Complex>(cfg, out);
  } else {
    std::string names = "all";
    for (const std::string& s : verify_suite_names()) names += ", " + s;
    throw std::invalid_argument("unknown suite '" + suite + "' (choose from: " + names + ")");
  }
}

}  // namespace

VerifyConfig normalized(const VerifyConfig& cfg) {
  VerifyConfig out = cfg;
  if (out.ms.empty()) out.ms = {1, 1};
  for (int v : out.ms)
    if (v <= 0) throw std::invalid_argument("site weights must be positive");
  int M = 0;
  for (int v : out.ms) M += v;
  if (out.num_roots < 0) out.num_roots = M / 2;
  if (out.num_roots > M)
    throw std::invalid_argument("num_roots exceeds the total weight " + std::to_string(M));
  if (out.K < 0) throw std::invalid_argument("series order K must be nonnegative");
  if (out.z.empty()) {
    std::mt19937_64 rng(out.seed);
    std::vector<long> vals;
    while (vals.size() < out.ms.size()) {
      long v = long(rng() % 100) + 1;
      if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
    }
    for (long v : vals) out.z.push_back(CRat(Rational(v)));
  }
  if (out.z.size() != out.ms.size())
    throw std::invalid_argument("z must list one pole per site");
  require_admissible_poles(out.z);
  out.threads = resolve_threads(out.threads);
  return out;
}

int SuiteReport::failures() const {
  int n = 0;
  for (const CheckResult& c : checks)
    if (c.status == "fail") ++n;
  return n;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"repn", "gaudin", "bethe", "wronski", "kzb"};
  return names;
}

SuiteReport run_suite(const std::string& suite, const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = suite;
  rep.config = normalized(cfg);
  if (suite == "all")
    for (const std::string& s : verify_suite_names()) run_one(s, rep.config, rep.checks);
  else
    run_one(suite, rep.config, rep.checks);
  return rep;
}

Json report_json(const SuiteReport& rep) {
  Json j;
  j["suite"] = rep.suite;
  Json cfg;
  cfg["ms"] = rep.config.ms;
  cfg["num_roots"] = rep.config.num_roots;
  cfg["mu"] = to_json(rep.config.mu);
  cfg["z"] = to_json(rep.config.z);
  cfg["backend"] = rep.config.exact ? "exact" : "float";
  cfg["K"] = rep.config.K;
  cfg["tol"] = rep.config.tol;
  cfg["seed"] = rep.config.seed;
  cfg["starts"] = rep.config.starts;
  j["config"] = cfg;
  Json checks = Json::array();
  for (const CheckResult& c : rep.checks) {
    Json e;
    e["anchor"] = c.anchor;
    e["name"] = c.name;
    e["status"] = c.status;
    e["defect"] = c.defect;
    e["note"] = c.note;
    e["wall_ms"] = c.wall_ms;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["failures"] = rep.failures();
  j["clean"] = rep.all_passed();
  return j;
}

void print_report(std::ostream& os, const SuiteReport& rep) {
  os << "suite " << rep.suite;
  if (!rep.config.ms.empty()) {
    os << "  [ms =";
    for (int v : rep.config.ms) os << " " << v;
    os << ", m = " << rep.config.num_roots << ", mu = " << rep.config.mu.str()
       << ", backend = " << (rep.config.exact ? "exact" : "float") << "]";
  }
  os << "\n";
  int skipped = 0;
  for (const CheckResult& c : rep.checks) {
    const char* tag = c.status == "pass" ? "pass" : (c.status == "fail" ? "FAIL" : "skip");
    if (c.status == "skipped-assumption") ++skipped;
    os << "  " << std::left << std::setw(4) << tag << "  " << std::setw(32) << c.anchor << "  "
       << c.name;
    os << "  (defect " << std::setprecision(3) << c.defect << ", "
       << std::fixed << std::setprecision(1) << c.wall_ms << " ms)"
       << std::defaultfloat << std::setprecision(6);
    if (!c.note.empty()) os << "  -- " << c.note;
    os << "\n";
  }
  os << "result: " << (rep.all_passed() ? "PASS" : "FAIL") << " (" << rep.checks.size()
     << " checks, " << rep.failures() << " failed, " << skipped << " skipped)\n";
}

SuiteReport report_from_json(const Json& j) {
  SuiteReport rep;
  rep.suite = j.value("suite", std::string("unknown"));
  rep.config.ms.clear();
  rep.config.z.clear();
  if (!j.contains("checks") || !j["checks"].is_array())
    throw std::runtime_error("report: missing checks array");
  for (const Json& e : j["checks"]) {
    CheckResult c;
    c.anchor = e.value("anchor", std::string());
    c.name = e.value("name", std::string());
    c.status = e.value("status", std::string("fail"));
    c.defect = e.value("defect", 0.0);
    c.note = e.value("note", std::string());
    c.wall_ms = e.value("wall_ms", 0.0);
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace gaudin
