#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyper::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,     // a property check (holomorphy) did not hold
  kUsageError = 2,      // bad arguments, parse errors, I/O
  kAlgebraError = 3,    // division by a divisor of zero
  kNumericDivergence = 4,
};

/// Runs one invocation. `args` excludes the program name, e.g.
/// {"eval", "(1+1h)*(1-1h)"}. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyper::cli
