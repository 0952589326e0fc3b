// Command-line front end: finite-volume random Landau Hamiltonian experiments.
//
// Exit codes: 0 success, 2 config error, 3 guard failure, 4 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "landaulab/experiments.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  std::optional<int> workers;
  std::string preset;
};

landaulab::ExperimentConfig resolve_config(const CliOptions& opts) {
  landaulab::ExperimentConfig config;
  if (!opts.config_path.empty()) {
    config = landaulab::ExperimentConfig::from_file(opts.config_path);
  } else if (opts.preset == "desk") {
    config = landaulab::ExperimentConfig::preset_desk();
  } else if (!opts.preset.empty()) {
    throw landaulab::ConfigError("unknown preset: " + opts.preset);
  } else {
    throw landaulab::ConfigError("give --config PATH or --preset desk");
  }
  if (!opts.out_dir.empty()) config.output.directory = opts.out_dir;
  if (opts.seed) config.run.seed = *opts.seed;
  if (opts.realizations) config.run.realizations = *opts.realizations;
  if (opts.workers) config.run.workers = *opts.workers;
  if (config.run.realizations < 1 || config.run.workers < 1) {
    throw landaulab::ConfigError("realizations and workers must be >= 1");
  }
  return config;
}

void add_common(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config (or manifest) file");
  cmd->add_option("--out", opts.out_dir, "output directory override");
  cmd->add_option("--seed", opts.seed, "experiment seed override");
  cmd->add_option("--realizations", opts.realizations,
                  "disorder realization count override");
  cmd->add_option("--workers", opts.workers,
                  "worker thread hint (outputs do not depend on it)");
  cmd->add_option("--preset", opts.preset, "named preset (desk)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"landaulab: disordered Landau level numerics on a torus"};
  app.require_subcommand(1);

  CliOptions opts;
  const std::vector<std::string> commands = {"spectrum", "hall", "wegner",
                                             "moments", "scan-mobility"};
  for (const std::string& name : commands) {
    CLI::App* cmd = app.add_subcommand(
        name, name == "spectrum"     ? "band report and density of states"
              : name == "hall"       ? "switch-function Hall conductance trace"
              : name == "wegner"     ? "eigenvalue-count scaling statistics"
              : name == "moments"    ? "transport moments and exponents"
                                     : "mobility-edge proxy scans");
    add_common(cmd, opts);
  }
  CLI::App* validate =
      app.add_subcommand("validate-config", "check a config and print it resolved");
  add_common(validate, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const landaulab::ExperimentConfig config = resolve_config(opts);
    if (validate->parsed()) {
      // Fail-fast guard checks without any eigensolve.
      config.make_torus();
      config.make_law();
      config.make_profile();
      std::cout << config.to_json_text() << "\n";
      return 0;
    }
    for (const std::string& name : commands) {
      if (app.get_subcommand(name)->parsed()) {
        const landaulab::CommandOutcome outcome =
            landaulab::run_command(name, config);
        std::cout << name << ": wrote " << outcome.files.size() << " files to "
                  << outcome.directory.string() << " in " << outcome.wall_seconds
                  << " s\n";
        return 0;
      }
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const landaulab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const landaulab::GuardError& e) {
    std::cerr << "guard failure: " << e.what() << "\n";
    return 3;
  } catch (const landaulab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 4;
  }
}
