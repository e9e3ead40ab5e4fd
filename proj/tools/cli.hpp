#ifndef EXITTIME_TOOLS_CLI_HPP
#define EXITTIME_TOOLS_CLI_HPP

#include <iosfwd>

namespace exittime::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kModelError = 3,
  kRuntimeError = 4,
};

/// Entry point of the `exittime` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace exittime::cli

#endif  // EXITTIME_TOOLS_CLI_HPP
