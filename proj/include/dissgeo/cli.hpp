#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dissgeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitNumericFailure = 3;

/// Runs one command. `args` excludes the program name. Summaries and
/// tables go to `out`, diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g".
std::string format_double(double x);

}  // namespace dissgeo::cli
