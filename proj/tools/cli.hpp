#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucp::cli {

// Exit codes: 0 success, 1 findings or warnings, 2 errors, 64 usage error.
constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

/// Full command-line entry point, separated from main() so tests can drive it
/// in-process. `in` backs the `-` stdin convention for single-program commands.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, bool color = false);

}  // namespace ucp::cli
