#pragma once

#include <iosfwd>

namespace bcdsat::cli {

// Exit codes follow the competition convention.
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitUnknown = 0;
inline constexpr int kExitError = 1;

/// Entry point of the `bcdsat` tool with injectable streams.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace bcdsat::cli
