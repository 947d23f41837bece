#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kcsp {

enum ExitCode : int {
  kExitOk = 0,        // success, SAT, pass
  kExitNegative = 1,  // UNSAT, FAILURE, failed check
  kExitUsage = 2,
  kExitRuntime = 3,
};

/// Entry point of the `kcsp` tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcsp
