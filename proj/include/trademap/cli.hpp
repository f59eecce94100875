#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "trademap/error.hpp"

namespace trademap::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParse = 2;
inline constexpr int kEmptyRoster = 3;
inline constexpr int kDisconnected = 4;
inline constexpr int kNoConvergence = 5;

int exit_code(ErrorCode code);

// Runs the command line `args` (without the program name). Data goes to
// `out` unless redirected to files; logs and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trademap::cli
