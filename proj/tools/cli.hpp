#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tristream::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,       // bad flag, bad parameter value
  kData = 2,        // unreadable or malformed input
  kInfeasible = 3,  // no triangles, too few runs, graph over budget
};

// Runs the command line `args` (without the program name). Results go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tristream::cli
