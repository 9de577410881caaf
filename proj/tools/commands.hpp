#pragma once

#include <iosfwd>

namespace relocast::cli {

// Exit codes of the relocast tool.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeFailure = 1;
inline constexpr int kUsageFailure = 2;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace relocast::cli
