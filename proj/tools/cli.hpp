#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wzforge::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kEngine = 3 };

// args excludes the program name; records go to out, progress to err
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wzforge::cli
