#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rtc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs one command line (args excludes the program name).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);
std::string format_vector(const std::vector<double>& v);

}  // namespace rtc::cli
