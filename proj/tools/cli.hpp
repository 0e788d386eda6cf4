#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace firmcor {

// args without the program name; returns 0, 1 or 2
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace firmcor
