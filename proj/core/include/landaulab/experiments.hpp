#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "landaulab/config.hpp"

namespace landaulab {

// One CLI subcommand execution: validates, writes the manifest, computes,
// emits files under config.output.directory. Every output is a deterministic
// function of the config minus run.workers and output.directory.
struct CommandOutcome {
  std::filesystem::path directory;
  std::vector<std::string> files;
  double wall_seconds = 0.0;
};

CommandOutcome cmd_spectrum(const ExperimentConfig& config);
CommandOutcome cmd_hall(const ExperimentConfig& config);
CommandOutcome cmd_wegner(const ExperimentConfig& config);
CommandOutcome cmd_moments(const ExperimentConfig& config);
CommandOutcome cmd_scan_mobility(const ExperimentConfig& config);

// name in {spectrum, hall, wegner, moments, scan-mobility}.
CommandOutcome run_command(const std::string& name,
                           const ExperimentConfig& config);

}  // namespace landaulab
