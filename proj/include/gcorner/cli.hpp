#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcorner {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitIo = 2,
    kExitNumeric = 3,
};

/// Runs a subcommand. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcorner
