#pragma once

// Named check suites over the library's operator identities, the Bethe
// solver, the Wronskian correspondence, and the truncated Lambda-series
// actions.  Each check reports a stable anchor id, a pass/fail/
// skipped-assumption status, and the numeric defect it witnessed.
//
// Exit contract used by the CLI: a report is "clean" when no check failed;
// skipped-assumption entries (hypothesis of the claim not met by the supplied
// parameters) never make a report unclean.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaudin/json_io.hpp"
#include "gaudin/scalar.hpp"

namespace gaudin {

struct VerifyConfig {
  std::vector<int> ms;            // site weights; empty means spin-1/2 pair {1, 1}
  int num_roots = -1;             // Bethe roots m; -1 picks floor(M/2)
  CRat mu = CRat(Rational(2, 5));
  std::vector<CRat> z;            // pole positions; empty means drawn from seed
  bool exact = true;              // identity suites over exact scalars, else doubles
  int K = 8;                      // Lambda-series truncation order
  double tol = 1e-8;              // defect gate for float checks
  std::uint64_t seed = 1;         // drives z draws and solver starts
  int starts = 0;                 // solver multi-start override, 0 = automatic
  int threads = 0;                // 0 = GAUDIN_LAB_THREADS or 1
};

// Fill in defaulted fields: ms = {1,1} if empty, num_roots = floor(M/2) if
// negative, z = distinct integers in [1, 100] drawn from seed if empty.
VerifyConfig normalized(const VerifyConfig& cfg);

struct CheckResult {
  std::string anchor;  // stable claim id, e.g. "gaudin-commutativity"
  std::string name;    // human description
  std::string status;  // "pass" | "fail" | "skipped-assumption"
  double defect = 0;   // witnessed defect; 0 for exact passes
  std::string note;    // counts, thresholds, or the unmet assumption
  double wall_ms = 0;
};

struct SuiteReport {
  std::string suite;
  VerifyConfig config;
  std::vector<CheckResult> checks;
  int failures() const;
  bool all_passed() const { return failures() == 0; }
};

// "repn", "gaudin", "bethe", "wronski", "kzb"
const std::vector<std::string>& verify_suite_names();

// suite may also be "all"; throws std::invalid_argument on unknown names
SuiteReport run_suite(const std::string& suite, const VerifyConfig& cfg);

Json report_json(const SuiteReport& rep);
void print_report(std::ostream& os, const SuiteReport& rep);

// Rebuild the check list (not the config) from a stored report, for re-rendering.
SuiteReport report_from_json(const Json& j);

}  // namespace gaudin
