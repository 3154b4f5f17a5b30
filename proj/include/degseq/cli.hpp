#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace degseq {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitWidthExceeded = 2,
  kExitInvariantBreach = 3,
};

// Entry point of the `degseq` tool. `args` excludes the program name. Reports
// go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace degseq
