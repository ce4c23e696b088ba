#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bogospec {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitChecksFailed = 1, // verify ran and at least one check failed
    kExitUsage = 2,        // malformed flags or config
    kExitRuntime = 3,      // a computation refused or failed
};

/// Runs the command-line tool on `args` (without the program name).
/// Data goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bogospec
