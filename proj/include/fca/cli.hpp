#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fca::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kEmptyResult = 3;
inline constexpr int kCapacityExceeded = 4;
inline constexpr int kConsistencyFailure = 5;

/// Runs the command line `args` (without the program name). Human-readable
/// progress goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fca::cli
