#pragma once

#include <ostream>

namespace icm::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// Entry point of the icm tool. Exit codes: 0 success, 1 failed assumption
/// or verification check, 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace icm::cli
