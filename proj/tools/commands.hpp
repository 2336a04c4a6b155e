#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mvsk::cli {

/// Exit status of a command.
enum Exit : int {
    kSuccess = 0,
    kUsageOrIo = 1,
    kPartialFailure = 2,
};

/// Runs the `mvsk` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mvsk::cli
