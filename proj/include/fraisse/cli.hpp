#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fraisse::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // verification said no, or an unexpected fault
inline constexpr int kBudget = 2;
inline constexpr int kPrefix = 3;
inline constexpr int kInvalid = 4;

// Runs one forge invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraisse::cli
