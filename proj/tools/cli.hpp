#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgbr::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kFinding = 2 };

/// Runs one invocation; args excludes the program name. JSON (CSV for
/// scatter) goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgbr::cli
