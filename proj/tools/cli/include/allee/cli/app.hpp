#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace allee::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the allee_lab tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace allee::cli
