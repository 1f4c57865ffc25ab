#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tfz::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 1,
    numerical_failure = 2,
    assumption_not_met = 3,
};

/// Runs the command line `args` (args[0] is the program name). Messages go to
/// `out` and `err`; files go to the --out directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tfz::cli
