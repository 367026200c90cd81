#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subhyp::cli {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitDomain = 65;
inline constexpr int kExitNumeric = 70;

/// Parses argv, dispatches one command and writes its JSON report to the
/// --report path (stdout when absent). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subhyp::cli
