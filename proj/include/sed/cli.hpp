#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sed::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDomain = 2,
    kStorage = 3,
};

/// Runs one analyst command. `args` excludes the program name.
/// `in` feeds the interactive `elicit` dialogue.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sed::cli
