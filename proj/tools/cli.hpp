#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selbal::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 definitive result, 2 inconclusive (or structural check
// failure), 1 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selbal::cli
