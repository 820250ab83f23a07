#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lorlie::cli {

enum ExitCode : int {
  ok = 0,
  usage = 1,
  parse_error = 2,
  not_a_lie_algebra = 3,
  cross_check_mismatch = 4,
  hypothesis_failed = 5,
};

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorlie::cli
