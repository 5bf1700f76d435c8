#include "gaudin/cli.hpp"

#include <cctype>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaudin/bethe_solver.hpp"
#include "gaudin/json_io.hpp"
#include "gaudin/kzb_series.hpp"
#include "gaudin/repn_sl2.hpp"
#include "gaudin/threads.hpp"
#include "gaudin/verify.hpp"
#include "gaudin/wronski_fiber.hpp"

namespace gaudin {

namespace {

constexpr int kNuUnset = std::numeric_limits<int>::min();

// Split "A", "Bi", or "A+Bi" into real/imaginary part strings.  Signs that
// follow an exponent marker or a slash do not split.
void split_complex_literal(const std::string& text, std::string& re, std::string& im) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty number");
  const bool imaginary = s.back() == 'i' || s.back() == 'I';
  if (imaginary) s.pop_back();
  size_t split = std::string::npos;
  for (size_t k = 1; k < s.size(); ++k) {
    if (s[k] != '+' && s[k] != '-') continue;
    const char prev = s[k - 1];
    if (prev == 'e' || prev == 'E' || prev == '/' || prev == '+' || prev == '-') continue;
    split = k;  // keep the last admissible sign
  }
  if (!imaginary) {
    if (split != std::string::npos)
      throw std::invalid_argument("'" + text + "': complex literal must end in i");
    re = s;
    im = "0";
    return;
  }
  if (split == std::string::npos) {
    re = "0";
    im = s.empty() || s == "+" ? "1" : (s == "-" ? "-1" : s);
    return;
  }
  re = s.substr(0, split);
  std::string rest = s.substr(split);
  if (rest == "+") rest = "1";
  if (rest == "-") rest = "-1";
  im = rest;
}

Rational parse_rational_signed(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  return parse_rational(s);
}

// rational complex literal: "2/5", "0.4", "1/3+2/5i", "-0.7i", "i"
CRat parse_crat(const std::string& text) {
  std::string re, im;
  split_complex_literal(text, re, im);
  return CRat(parse_rational_signed(re), parse_rational_signed(im));
}

template <class S>
S from_crat(const CRat& v);
template <>
CRat from_crat<CRat>(const CRat& v) {
  return v;
}
template <>
Complex from_crat<Complex>(const CRat& v) {
  return v.to_complex();
}

// float complex literal: "1.5", "2+0.4i", "-1.1-0.9i", "0.3i"
Complex parse_complex(const std::string& text) {
  std::string re, im;
  split_complex_literal(text, re, im);
  size_t pos = 0;
  double r = std::stod(re, &pos);
  if (pos != re.size()) throw std::invalid_argument("'" + text + "': bad real part");
  double i = std::stod(im, &pos);
  if (pos != im.size()) throw std::invalid_argument("'" + text + "': bad imaginary part");
  return Complex(r, i);
}

struct Common {
  int n = 2;
  std::vector<int> ms;
  int m = -1;
  int nu = kNuUnset;
  std::string mu = "2/5";
  std::vector<std::string> z;
  std::string backend = "exact";
  int K = 8;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  int starts = 0;
  int threads = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_roots) {
  auto* n_opt = cmd->add_option("--n", c.n, "number of spin-1/2 sites (all weights 1)");
  auto* ms_opt =
      cmd->add_option("--ms", c.ms, "site weights, comma separated")->delimiter(',');
  ms_opt->excludes(n_opt);
  if (with_roots) {
    auto* m_opt = cmd->add_option("--m", c.m, "number of Bethe roots");
    cmd->add_option("--nu", c.nu, "target weight M - 2m (alternative to --m)")->excludes(m_opt);
  }
  cmd->add_option("--mu", c.mu, "twist parameter: 1/3, 0.4, or a+bi with rational parts");
  cmd->add_option("--z", c.z, "site poles, comma separated (rational or a+bi)")->delimiter(',');
  cmd->add_option("--seed", c.seed, "seed for drawn poles and solver starts");
  cmd->add_option("--starts", c.starts, "solver start batches, 0 = automatic");
  cmd->add_option("--threads", c.threads, "worker threads, 0 = GAUDIN_LAB_THREADS or 1");
  cmd->add_option("--tol", c.tol, "defect gate for float checks");
  cmd->add_option("--out", c.out, "write JSON here instead of stdout");
}

VerifyConfig to_config(const Common& c) {
  VerifyConfig cfg;
  cfg.ms = c.ms.empty() ? std::vector<int>(size_t(c.n), 1) : c.ms;
  int M = 0;
  for (int v : cfg.ms) M += v;
  if (c.nu != kNuUnset) {
    if ((M - c.nu) % 2 != 0 || c.nu > M || (M - c.nu) / 2 > M)
      throw std::invalid_argument("nu must have the parity of the total weight " +
                                  std::to_string(M) + " and admit 0 <= m <= M");
    cfg.num_roots = (M - c.nu) / 2;
  } else {
    cfg.num_roots = c.m;
  }
  cfg.mu = parse_crat(c.mu);
  for (const std::string& s : c.z) cfg.z.push_back(parse_crat(s));
  if (c.backend != "exact" && c.backend != "float")
    throw std::invalid_argument("backend must be 'exact' or 'float'");
  cfg.exact = c.backend == "exact";
  cfg.K = c.K;
  cfg.tol = c.tol;
  cfg.seed = c.seed;
  cfg.starts = c.starts;
  cfg.threads = c.threads;
  return cfg;
}

BetheSolveOptions solver_options(const VerifyConfig& cfg) {
  BetheSolveOptions opt;
  opt.seed = cfg.seed;
  opt.starts = cfg.starts;
  opt.threads = cfg.threads;
  return opt;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << dump_json(j);
  else
    write_json_file(out_path, j);
}

Json poly_json(const Poly<Complex>& p) {
  Json out = Json::array();
  for (int k = 0; k <= p.degree(); ++k) out.push_back(to_json(p.coeff(k)));
  return out;
}

int cmd_solve(const Common& c, const std::string& csv_path) {
  VerifyConfig cfg = normalized(to_config(c));
  TensorSpace sp(cfg.ms);
  const int nu = sp.total_weight() - 2 * cfg.num_roots;
  std::vector<Complex> z;
  for (const CRat& v : cfg.z) z.push_back(v.to_complex());
  const Complex mu = cfg.mu.to_complex();

  BetheSolveReport rep = solve_bethe(z, cfg.ms, mu, cfg.num_roots, solver_options(cfg));

  Json records = Json::array();
  for (const BetheSolution& sol : rep.solutions) {
    Json rec;
    rec["ms"] = cfg.ms;
    rec["nu"] = nu;
    rec["mu"] = to_json(mu);
    rec["z"] = to_json(z);
    rec["roots"] = to_json(sol.roots);
    rec["residual"] = sol.residual;
    rec["jac_sigma_min"] = sol.jac_sigma_min;
    rec["eigenvalues"] = to_json(sol.eigenvalues);
    records.push_back(rec);
  }
  emit(records, c.out);

  if (!csv_path.empty()) {
    std::ostringstream csv;
    csv << "solution,root,re,im,residual,jac_sigma_min\n";
    csv << std::setprecision(17);
    for (size_t i = 0; i < rep.solutions.size(); ++i)
      for (size_t k = 0; k < rep.solutions[i].roots.size(); ++k)
        csv << i << "," << k << "," << rep.solutions[i].roots[k].real() << ","
            << rep.solutions[i].roots[k].imag() << "," << rep.solutions[i].residual << ","
            << rep.solutions[i].jac_sigma_min << "\n";
    write_text_file(csv_path, csv.str());
  }

  std::cerr << "solve: " << rep.solutions.size() << " of " << rep.expected
            << " expected solutions, " << rep.starts_used << " starts"
            << (rep.assumption_violated ? ", resonant mu: completeness not claimed" : "")
            << (rep.complete ? "" : " [incomplete]") << "\n";
  return rep.complete ? 0 : 2;
}

int cmd_verify(const Common& c, const std::string& suite) {
  SuiteReport rep = run_suite(suite, to_config(c));
  print_report(std::cout, rep);
  if (!c.out.empty()) write_json_file(c.out, report_json(rep));
  return rep.all_passed() ? 0 : 1;
}

int cmd_fiber(const Common& c, const std::vector<std::string>& a_str, const std::string& zeta_str,
              int m, int ell) {
  std::vector<Complex> a;
  for (const std::string& s : a_str) a.push_back(parse_complex(s));
  if (a.empty()) throw std::invalid_argument("fiber: --a must list the target coefficients");
  const Complex zeta = parse_complex(zeta_str);
  if (ell < 0) ell = int(a.size()) - m;

  BetheSolveOptions opt;
  opt.seed = c.seed;
  opt.starts = c.starts;
  opt.threads = resolve_threads(c.threads);
  WronskiFiberReport rep = wronski_fiber(a, zeta, m, ell, opt);

  Json j;
  j["a"] = to_json(a);
  j["zeta"] = to_json(zeta);
  j["m"] = m;
  j["l"] = ell;
  j["expected"] = rep.expected;
  j["count"] = rep.points.size();
  j["generic"] = rep.generic;
  j["complete"] = rep.complete;
  j["b"] = to_json(rep.b);
  Json pairs = Json::array();
  for (const FiberPoint& pt : rep.points) {
    Json e;
    e["p"] = poly_json(pt.pair.p);
    e["q"] = poly_json(pt.pair.q);
    e["roots"] = to_json(pt.sol.roots);
    e["dual_roots"] = to_json(pt.dual_roots);
    e["sigma_residual"] = pt.sigma_residual;
    e["dual_residual"] = pt.dual_residual;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  emit(j, c.out);

  if (!rep.generic) {
    std::cerr << "fiber: non-generic target: " << rep.message << "\n";
    return 2;
  }
  std::cerr << "fiber: " << rep.points.size() << " of " << rep.expected << " expected points"
            << (rep.complete ? "" : " [incomplete]") << "\n";
  return rep.complete ? 0 : 2;
}

int cmd_series(const Common& c, const std::vector<std::string>& v_str) {
  VerifyConfig cfg = normalized(to_config(c));
  TensorSpace sp(cfg.ms);
  if (!sp.has_block(0))
    throw std::invalid_argument("series: the total weight is odd, no zero-weight block");

  Json j;
  j["ms"] = cfg.ms;
  j["mu"] = to_json(cfg.mu.to_complex());
  j["K"] = cfg.K;

  auto fill = [&](auto ops, auto mu) {
    using S = decltype(mu);
    std::vector<S> v;
    if (v_str.empty()) {
      v.assign(size_t(ops.dim), scalar_traits<S>::zero());
      v[0] = scalar_traits<S>::one();
    } else {
      if (int(v_str.size()) != ops.dim)
        throw std::invalid_argument("series: --v needs " + std::to_string(ops.dim) +
                                    " entries for this block");
      for (const std::string& s : v_str) v.push_back(from_crat<S>(parse_crat(s)));
    }
    LambdaSeriesVector<S> psi = build_eigenfunction(ops, v, mu, cfg.K);
    j["dim"] = ops.dim;
    j["pi_power"] = psi.pi_power;
    Json seed = Json::array();
    for (const S& x : v) seed.push_back(to_json(scalar_traits<S>::to_complex(x)));
    j["seed_vector"] = seed;
    Json slots = Json::array();
    for (const auto& slot : psi.coeffs) {
      Json row = Json::array();
      for (const S& x : slot) row.push_back(to_json(scalar_traits<S>::to_complex(x)));
      slots.push_back(row);
    }
    j["coeffs"] = slots;
  };
  if (cfg.exact)
    fill(kzb_operators<CRat>(sp), cfg.mu);
  else
    fill(kzb_operators<Complex>(sp), cfg.mu.to_complex());

  emit(j, c.out);
  return 0;
}

int cmd_report(const std::string& in_path) {
  SuiteReport rep = report_from_json(read_json_file(in_path));
  print_report(std::cout, rep);
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "trigonometric Gaudin workbench: Bethe root solving, operator identity suites,\n"
      "Wronski fibers, and truncated Lambda-series eigenfunctions"};
  app.require_subcommand(1);

  Common c_solve, c_verify, c_fiber, c_series;
  std::string csv_path, suite = "all", report_in, zeta_str = "0.31+0.17i";
  std::vector<std::string> a_str, v_str;
  int fiber_m = 1, fiber_l = -1;

  CLI::App* solve = app.add_subcommand("solve", "find all Bethe root sets for one system");
  add_common(solve, c_solve, true);
  solve->add_option("--csv", csv_path, "also write a flat CSV table of the roots");

  CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
  add_common(verify, c_verify, true);
  verify->add_option("--suite", suite, "repn, gaudin, bethe, wronski, kzb, or all");
  verify->add_option("--backend", c_verify.backend, "exact (default) or float");
  verify->add_option("--K", c_verify.K, "Lambda-series truncation order");

  CLI::App* fiber = app.add_subcommand("fiber", "fiber of the Wronski map over a target");
  fiber->add_option("--a", a_str, "target coefficients a_1..a_n, comma separated complex")
      ->delimiter(',')
      ->required();
  fiber->add_option("--zeta", zeta_str, "exponent of the pair, complex, not in (1/2)Z");
  fiber->add_option("--m", fiber_m, "degree of the p-part");
  fiber->add_option("--l", fiber_l, "degree of the q-part (default n - m)");
  fiber->add_option("--seed", c_fiber.seed, "seed for solver starts");
  fiber->add_option("--starts", c_fiber.starts, "solver start batches, 0 = automatic");
  fiber->add_option("--threads", c_fiber.threads, "worker threads, 0 = GAUDIN_LAB_THREADS or 1");
  fiber->add_option("--out", c_fiber.out, "write JSON here instead of stdout");

  CLI::App* series = app.add_subcommand("series", "truncated Lambda-series eigenfunction");
  add_common(series, c_series, false);
  series->add_option("--K", c_series.K, "truncation order");
  series->add_option("--backend", c_series.backend, "exact (default) or float");
  series->add_option("--v", v_str, "seed vector on the zero-weight block, comma separated")
      ->delimiter(',');

  CLI::App* report = app.add_subcommand("report", "re-render a stored verify report");
  report->add_option("--in", report_in, "path of a JSON report written by verify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve->parsed()) return cmd_solve(c_solve, csv_path);
    if (verify->parsed()) return cmd_verify(c_verify, suite);
    if (fiber->parsed()) return cmd_fiber(c_fiber, a_str, zeta_str, fiber_m, fiber_l);
    if (series->parsed()) return cmd_series(c_series, v_str);
    if (report->parsed()) return cmd_report(report_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> store = args;
  std::vector<const char*> argv;
  argv.push_back("gaudin-lab");
  for (const std::string& s : store) argv.push_back(s.c_str());
  return run_cli(int(argv.size()), argv.data());
}

}  // namespace gaudin
