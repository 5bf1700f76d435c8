#pragma once

// Command-line front end.  Subcommands:
//   solve   -- find all Bethe root sets and their eigenvalue data
//   verify  -- run a named check suite and report pass/fail per claim
//   fiber   -- compute the fiber of the Wronski map over a target point
//   series  -- build a truncated Lambda-series eigenfunction
//   report  -- re-render a stored verify report
//
// Exit codes: 0 success, 1 invalid usage / failed checks / runtime error,
// 2 the computation ran but came back incomplete or non-generic.

#include <string>
#include <vector>

namespace gaudin {

int run_cli(int argc, const char* const* argv);

// convenience for tests: args without the program name
int run_cli(const std::vector<std::string>& args);

}  // namespace gaudin
