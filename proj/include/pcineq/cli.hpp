#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcineq::cli {

// Exit codes: 0 success, 1 usage error, 2 domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcineq::cli
