#pragma once

#include <ostream>

namespace spherebot::cli {

enum ExitStatus : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitUsage = 2,
  kExitDiverged = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "SPHEREBOT_OUT_DIR";

/// Entry point behind the `spherebot` executable. Verbs: run, sweep, presets,
/// validate.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spherebot::cli
