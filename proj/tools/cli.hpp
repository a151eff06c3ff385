#pragma once

#include <ostream>

namespace fpc::cli {

inline constexpr int exit_completed = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_diverged = 2;

/// Entry point of the `fpc` tool with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fpc::cli
