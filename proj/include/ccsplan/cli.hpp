#pragma once

#include <iosfwd>

namespace ccsplan {

// Entry point of the `ccsplan` tool. Returns the process exit code:
// 0 success, 1 validation or solve failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccsplan
