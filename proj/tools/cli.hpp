#pragma once

#include <iosfwd>

namespace andovar::cli {

// Exit codes: 0 ok, 1 usage or parse error, 2 hypothesis violated, 3 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace andovar::cli
