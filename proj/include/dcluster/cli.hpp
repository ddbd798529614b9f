// Command-line front end shared by the dcluster binary and its tests.
#pragma once

#include <iosfwd>

namespace dcluster {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_usage = 2 };

/// Parses argv, dispatches the subcommand and returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dcluster
