#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steinbounds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one command line. `args[0]` is the program name. Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace steinbounds::cli
