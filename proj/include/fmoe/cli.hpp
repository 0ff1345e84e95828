#pragma once

#include <iostream>

namespace fmoe {

/// Entry point of the fmoe-bench tool. Returns 0 on success, 1 on a
/// configuration or usage error and 2 on an I/O error.
int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace fmoe
