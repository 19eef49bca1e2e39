#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace soficlab {

// Exit codes: 0 pass, 1 check failure, 2 malformed input.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_input = 2;

// args[0] is the program name. Reports go to `out` unless --out names a file;
// diagnostics go to `err`, one line each.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace soficlab
