#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hopdisc::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kInternalError = 2;

// Subcommands: find-poly, verify-table, pattern, metrics, simulate.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hopdisc::cli
