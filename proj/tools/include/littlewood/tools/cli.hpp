#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace littlewood::tools {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,    // verify failure or a search ceiling violation
  kExitInadmissible = 2,   // 1/a + 1/b > 3/2
  kExitIo = 3,             // an output file could not be written
  kExitParse = 4,          // malformed flags, exponents, JSON or coefficients
  kExitCapacity = 5,       // an exact enumeration exceeds its cap or budget
};

/// Runs one command line (without the program name) and returns its exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace littlewood::tools
