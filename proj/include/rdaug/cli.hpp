#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rdaug::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kData = 2,
    kRuntime = 3,
};

// args excludes the program name. Diagnostics go to err, results to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdaug::cli
