#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualspace::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kDomain = 3,
  kNumerical = 4,
};

// args excludes the program name. `in` feeds `embed --input -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dualspace::cli
