#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spheroidal::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 2,
  kUsageError = 3,
  kOracleNotConverged = 4,
};

/// Runs one invocation. args excludes the program name. Output that is not
/// redirected with --out goes to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spheroidal::cli
