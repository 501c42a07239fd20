#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tribody::cli {

/// Parses `args` (without the program name), runs the subcommand and returns
/// the process exit code. Output files go to --out DIR, or to `out` if no
/// directory is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tribody::cli
