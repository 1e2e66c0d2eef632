#pragma once

#include <ostream>

namespace wiredrive::cli {

enum ExitCode : int {
  kSuccess = 0,
  kParseError = 1,
  kInfeasible = 2,
  kPlanInvariant = 3,
  kChainLimit = 4,
};

// Runs one CLI invocation. Progress and summaries go to `out`, diagnostics
// to `err`; artifacts are written under the --out directory.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wiredrive::cli
