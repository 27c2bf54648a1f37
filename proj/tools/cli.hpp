#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace algdyn::cli {

// Runs one command line (args excludes the program name) and returns the exit code:
// 0 ok, 1 bad input, 2 failed cross-check, 3 outside the supported regime.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace algdyn::cli
