#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mll::cli {

enum ExitStatus : int {
  kOk = 0,
  kPropertyFails = 1,
  kUsage = 2,
  kBadInput = 3,
};

// Runs one command line (without the program name). Machine output goes to
// `out` as JSON (DOT for `lattice dot`), summaries and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mll::cli
