#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dseries::cli {

/// Runs the command line `args` (without the program name). Returns the exit
/// status: 0 success, 1 validation error, 2 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dseries::cli
