#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace novikov {

// args excludes the program name. Returns 0 when every check passes, 1 when a
// check fails or is inconclusive, 2 on an input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace novikov
