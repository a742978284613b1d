#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cosetlab::cli {

/// Exit codes of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kRuntimeError = 2;

/// Runs the tool on args (args[0] is the program name). Data goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosetlab::cli
