#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace planar::cli {

enum ExitStatus : int {
  kOk = 0,
  kUsage = 2,       // bad flags or missing arguments
  kInput = 3,       // unreadable or malformed input file / value
  kInfeasible = 4,  // geometry or optimization problem cannot be realized
  kNumerical = 5,   // rank-deficient fit or other numerical failure
};

/// Runs one command line. `args[0]` is the program name. Results go to `out`
/// (or to files named by flags); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace planar::cli
