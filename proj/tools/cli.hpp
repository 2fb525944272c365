#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rkhsd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

/// Runs one command line (args[0] is the program name).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rkhsd::cli
