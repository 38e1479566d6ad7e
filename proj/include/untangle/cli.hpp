#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace untangle {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // validation or audit failure, malformed input
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOracleGuard = 3;

/// Entry point of the `untangle` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace untangle
