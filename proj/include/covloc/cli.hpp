#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace covloc::cli {

// Runs one CLI invocation (args exclude the program name). Exit codes:
// 0 success / passing check, 1 domain failure (invalid matrix, failed
// check, window mismatch), 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace covloc::cli
