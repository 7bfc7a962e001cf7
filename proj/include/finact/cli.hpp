#pragma once

#include <string>
#include <vector>

namespace finact {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitVerification = 4;

/// argv[0] is the program name. Writes a one-line summary to stderr.
int run_command(const std::vector<std::string>& argv);

}  // namespace finact
