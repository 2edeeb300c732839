#pragma once

#include <optional>
#include <string>

#include "sseplab/cli/config.hpp"
#include "sseplab/harness/experiment.hpp"

namespace sseplab {

/// Stable exit-code contract of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCriterionFail = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitPrecondition = 3;

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

/// Builds the harness experiment from the config sections [experiment],
/// [rho0], and [observable]; every rejection is a ConfigError naming the
/// offending line or key.
ExperimentConfig experiment_from_config(const ConfigFile& file);

int cmd_simulate(const ConfigFile& file, const CliOptions& opts);
int cmd_verify_rate(const ConfigFile& file, const CliOptions& opts);
int cmd_berry_esseen(const ConfigFile& file, const CliOptions& opts);
int cmd_diagnostics(const ConfigFile& file, const CliOptions& opts);
int cmd_covariance(const ConfigFile& file, const CliOptions& opts);

/// Parses the config and dispatches; maps ConfigError to exit 2 and run-phase
/// precondition failures (engine caps, the rate-fit noise gate) to exit 3.
int run_command(const std::string& command, const CliOptions& opts);

}  // namespace sseplab
