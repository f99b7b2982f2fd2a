#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wmark::cli {

/// Exit codes of the `wmark` tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     ///< evaluate finished but at least one row failed
  kUsage = 2,       ///< bad arguments, dimensions or file formats
  kMathDomain = 3,  ///< e.g. alpha = 0 at extraction, undefined NC
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wmark::cli
