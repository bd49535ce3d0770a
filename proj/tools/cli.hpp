#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gseries::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kIo = 3 };

/// Runs one command line (without the program name). Regular output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gseries::cli
