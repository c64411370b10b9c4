#pragma once

#include <string>
#include <vector>

namespace pga {

// Runs one command line (program name excluded). Exit status: 0 success,
// 2 usage error, 3 data or validation error, 4 numerical failure.
int run_command(const std::vector<std::string>& args);

}  // namespace pga
