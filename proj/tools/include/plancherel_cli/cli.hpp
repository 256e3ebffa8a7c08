#pragma once

#include <iostream>

namespace plancherel::cli {

// Exit codes: 0 success, 1 usage error, 2 numerical non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

} // namespace plancherel::cli
