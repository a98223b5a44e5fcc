#pragma once

#include <string>
#include <vector>

#include "pilotwave/config.hpp"

namespace pw {

inline constexpr const char* kVersion = "pilotwave 1.1.0";

/// Exit codes: 0 success, 2 config error, 3 convergence failure, 4 internal.
enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitConvergence = 3, kExitInternal = 4 };

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> messages;
};

/// Executes cfg and writes all artifacts (plus resolved.json) into out_dir.
/// Convergence failures still write their flagged artifacts and return
/// kExitConvergence.
RunOutcome run(const RunConfig& cfg, const std::string& out_dir);

}  // namespace pw
