#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fnoise::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsage = 2 };

/// Runs one command line (args[0] is the program name). Writes the JSON
/// report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fnoise::cli
