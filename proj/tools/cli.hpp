#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathplan::cli {

enum Exit { Ok = 0, Usage = 2, NoPlan = 3, CheckFailed = 4, OracleDisagrees = 5 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathplan::cli
