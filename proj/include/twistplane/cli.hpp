#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistplane::cli {

/// Runs one command. `args` excludes the program name. Exit codes:
/// 0 success / all checks pass, 1 verification failure, 2 usage error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace twistplane::cli
