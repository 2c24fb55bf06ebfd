#pragma once

#include <ostream>

namespace tscale {

// Exit codes: 0 success, 1 computation or suite failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tscale
