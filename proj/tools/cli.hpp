#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tcs::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line (argv[0] is the program name). Reports go to
/// `out` (or the --out file), diagnostics to `err` as "error: CODE: text".
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a(const std::string& text);

}  // namespace tcs::cli
