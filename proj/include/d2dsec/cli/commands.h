#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "d2dsec/cli/config.h"
#include "d2dsec/cli/report.h"

namespace d2dsec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNumerical = 3,
  kExitInsufficientData = 4,
};

/// Verdict label when the density is below the threshold.
inline constexpr const char* kNoEnhancement = "no-enhancement-needed";

/// Result of a command: the report plus the exit code it implies (mc-validate
/// can produce a partial report that still exits with kExitInsufficientData).
struct CommandResult {
  Report report;
  int exit_code = kExitOk;
  /// Single-token verdict for `select`; empty otherwise.
  std::string verdict;
};

/// Closed-form probabilities for exactly one design (--r-g or --gamma).
CommandResult cmd_analytic(const RunConfig& cfg);

/// Density threshold and both secrecy-constrained optima.
CommandResult cmd_optimize(const RunConfig& cfg);

/// Technique verdict at the configured distance.
CommandResult cmd_select(const RunConfig& cfg);

/// Monte-Carlo estimates beside the closed forms for one design.
CommandResult cmd_mc_validate(const RunConfig& cfg);

/// Selection function over a distance grid, optionally with Monte-Carlo
/// coverage columns.
CommandResult cmd_sweep_d(const RunConfig& cfg);

/// Critical distance over a density grid.
CommandResult cmd_sweep_lambda(const RunConfig& cfg);

/// Parses `args` (without the program name), runs the command and writes its
/// report to the configured destination (`out` for "-"). Diagnostics go to
/// `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace d2dsec::cli
