#pragma once

namespace roadaccess::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitEvaluationError = 4;

/// Entry point for the `roadaccess` executable; returns the exit status.
int run_cli(int argc, const char* const* argv);

}  // namespace roadaccess::cli
