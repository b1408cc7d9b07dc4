#pragma once

#include <string>
#include <vector>

namespace jmg::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMaxIters = 2;
inline constexpr int kExitCheckFailed = 3;

// Entry point of `jordan-mg <solve|generate|verify|rate> [flags]`.
int run(int argc, const char* const* argv);

// Shortest round-trip decimal form of v.
std::string format_double(double v);

}  // namespace jmg::cli
