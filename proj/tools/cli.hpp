#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cn4::cli {

// Runs one command line (without the program name). Returns 0 on success,
// 1 on a usage or parameter error, 2 on a data, integrity or I/O error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cn4::cli
