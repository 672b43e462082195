#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<double> parse_grid(const std::string& text);

}  // namespace toric::cli
