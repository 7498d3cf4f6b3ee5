#pragma once

#include <iosfwd>

#include "cgate/cli/config.h"

namespace cgate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNetwork = 3;

// Entry point for the `cgate` binary. Data goes to files or `out`;
// diagnostics and help go to `err`.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const EnvLookup& env = ProcessEnvironment());

}  // namespace cgate::cli
