#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deduce::cli {

inline constexpr int kDerivable = 0;
inline constexpr int kNotDerivable = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kInvariantViolation = 3;

/// Runs the command line `args` (without the program name). Decisions and
/// proofs go to `out`; diagnostics and stats go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace deduce::cli
