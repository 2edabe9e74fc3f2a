#pragma once

#include <iosfwd>

namespace ordrel {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitUsage = 2, kExitInconclusive = 3 };

/// Entry point of the `ordrel` tool; `out` receives results, `err` diagnostics.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordrel
