#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxent::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kOtherError = 1,
  kInfeasible = 2,
  kSizeGuard = 3,
  kInvalidInput = 4,
  kNoConvergence = 5,
};

/// Runs one subcommand (estimate, toric-ideal, check, sample-sums). `args`
/// excludes the program name. Results go to `out` (or the --output file),
/// errors and MAXENT_LOG diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxent::cli
