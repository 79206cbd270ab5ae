#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unforced::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kDataError = 3,
  kRuntimeError = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unforced::cli
