#pragma once

#include <iosfwd>

namespace causal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Quick invariant checks. Prints one line per check; returns the failure count.
int selftest(std::ostream& out);

}  // namespace causal::cli
