#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drl::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1; // verification failure or numerical failure
inline constexpr int kUsage = 2;  // bad flags, malformed input, invalid configuration

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace drl::cli
