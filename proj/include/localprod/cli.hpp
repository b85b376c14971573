#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace localprod {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolations = 1,
  kExitInputError = 2,
  kExitNumericalFailure = 3,
};

/// Runs one subcommand (eval | check | hunt | props | selftest). args[0] is
/// the program name. Results go to `out`; structured error JSON to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace localprod
