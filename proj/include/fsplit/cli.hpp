#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fsplit {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,
  kExitParse = 2,
  kExitBudget = 3,
};

// Runs the tool on `args` (without the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsplit
