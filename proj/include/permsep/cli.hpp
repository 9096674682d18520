#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permsep::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kNotDetected = 1, // witness only
    kMismatch = 1,    // classify --oracle only
    kUsage = 2,
    kInvalidState = 3,
    kIoError = 4,
};

/// Runs one command line (without the program name). Human and JSON output
/// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace permsep::cli
