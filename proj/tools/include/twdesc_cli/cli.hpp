#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twdesc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitInput = 2;

// Runs one invocation; args excludes the program name. The JSON report goes
// to `out` (or the --out file) and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twdesc::cli
