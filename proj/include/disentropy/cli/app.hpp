#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "disentropy/error.hpp"

namespace disentropy::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitAllFailed = 4,
};

/// Config-type errors map to 2, I/O and input parse errors to 3.
int exit_code_for(ErrorCode code) noexcept;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "DISENTROPY_OUT_DIR";

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace disentropy::cli
