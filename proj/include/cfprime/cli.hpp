#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfprime::cli {

/// Exit codes: 0 success, 1 runtime failure (budget, domain), 2 usage error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfprime::cli
