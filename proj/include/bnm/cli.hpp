#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bnm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Runs the command line `args` (program name excluded) and returns the exit
/// code. Subcommands: genmap, train, run, bench, replay.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnm::cli
