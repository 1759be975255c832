#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrlift::cli {

// Runs one command given argv-style arguments (program name excluded) and
// returns the process exit code: 0 success, 1 domain or hypothesis failure,
// 2 parse or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrlift::cli
