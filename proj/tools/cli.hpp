#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nccw::cli {

// Exit codes: 0 success, 1 domain or validation error, 2 parse error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_parse = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nccw::cli
