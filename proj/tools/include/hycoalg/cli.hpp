#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hycoalg::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFail = 1,
  kSpecError = 2,
  kSimulationError = 3,
  kPrerequisite = 4,
};

/// Runs one command. `args` excludes the program name. Summaries go to
/// `out`, diagnostics to `err`; files are written under --out when given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hycoalg::cli
