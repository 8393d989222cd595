#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sdyn::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or to --output), diagnostics to `err`. Returns 0 on success, 1 when a
/// verified bound fails, 2 on usage, input or cap errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdyn::cli
