#pragma once

#include <iosfwd>

namespace fhlab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kContractFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumeric = 3;

/// Parses argv and runs one subcommand. Results go to `out` (or the file
/// named by --out), diagnostics and progress to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fhlab::cli
