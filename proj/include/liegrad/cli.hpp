#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liegrad {

/// Command-line entry point.  Exit codes: 0 success, 1 verification
/// failure, 2 usage or input error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace liegrad
