#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace khab {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
};

/// Runs the `khab` command line. args[0] is the program name.
///
/// Subcommands: transition, constants, counterexample, identity, convert,
/// plotdata, report. The default tolerance is 1e-9, overridden by the
/// KHAB_TOL environment variable and then by --tol.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace khab
