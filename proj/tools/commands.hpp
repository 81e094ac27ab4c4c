#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  ok = 0,
  not_equal = 1,
  parse_error = 2,
  verification_failure = 3,
  unsupported_input = 4,
};

/// Runs `amc <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace amc::cli
