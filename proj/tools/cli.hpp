#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcr3bp::cli {

enum ExitCode { kOk = 0, kUsage = 2, kDomain = 3, kDisagreement = 4 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcr3bp::cli
