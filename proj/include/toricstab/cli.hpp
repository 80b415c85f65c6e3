#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toricstab {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_schema = 2,
  exit_semantic = 3,
  exit_computation = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricstab
