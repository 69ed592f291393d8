#pragma once

#include <iosfwd>

namespace vfbns {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitAbort = 2;
inline constexpr int kExitUsage = 64;

/// Subcommands: run, sweep-eps, sweep-mesh, analyze.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vfbns
