#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epsnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitDomain = 2;

/// Runs one subcommand. `args` excludes the program name. Reports go to `out` unless
/// --output names a file; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epsnet::cli
