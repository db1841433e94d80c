#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linfproj::cli {

/// Process exit codes. Every termination path maps to exactly one of these.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,       // selftest: some criterion failed
  kBadInput = 2,          // malformed input, bad flags, out-of-range argument
  kRankDeficient = 3,
  kSolverIntegrity = 4,
  kBudgetExceeded = 5,
  kBaseMismatch = 6,
  kNonExactParameter = 7,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linfproj::cli
