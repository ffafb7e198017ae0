#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bincs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Runs one invocation. `args` excludes the program name. Reports go to
// `out`, diagnostics (including the master seed) to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "40", "60:80", "2:12,20,40" -> ascending list in the order given.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace bincs::cli
