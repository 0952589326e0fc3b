#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "landaulab/disorder.hpp"
#include "landaulab/geometry.hpp"

namespace landaulab {

// Resolved model geometry. Parsing resolves the flux mode, so `side` and
// `field` always satisfy the integer-flux constraint here.
struct ModelConfig {
  double field = 0.5 * M_PI;  // B, flux density
  double side = 8.0;          // L, length units
  int grid = 64;              // N, grid points per side
  std::string flux_mode = "exact";  // exact | adjust-length | adjust-field
};

struct LawConfig {
  std::string kind = "uniform";  // uniform | rescaled
  // uniform support [-M1, M2]
  double m1 = 1.0;
  double m2 = 1.0;
  // rescaled family (Corollary-style small-disorder mode)
  std::string base = "gaussian";
  double base_parameter = 1.0;
  double rescale_lambda = 1.0;
  double cutoff = 1.0;  // b
};

struct ProfileConfig {
  std::string shape = "square_indicator";
  double inner_radius = 0.45;
  double outer_radius = 0.45;
  double floor = 1.0;
  double cap = 1.0;
};

struct DisorderConfig {
  double lambda = 0.15 * M_PI;  // 0.3 B at the desk preset
  LawConfig law;
  ProfileConfig profile;
};

struct RunConfig {
  std::uint64_t seed = 20260810ULL;
  int realizations = 20;
  int workers = 2;  // hint only; outputs are worker-count independent
};

struct OutputConfig {
  std::string directory = "out";
  bool dump_disorder = false;
};

struct SpectrumTask {
  int n_bands = 3;
  int dos_bins = 48;
};

struct HallTask {
  std::vector<double> energy_grid;  // empty: use measured gap midpoints
  int band_points = 0;              // extra interior points per band
  double window_radius = -1.0;      // <0: L/4 - a
  double switch_r = -1.0;           // <0: L/2
  double switch_s = -1.0;
};

struct WegnerLength {
  double side = 2.0;
  int grid = 24;
};

struct WegnerTask {
  std::vector<double> window_widths;  // absolute energies; empty: {2,5,10}% of B
  std::vector<WegnerLength> lengths;  // empty: {L0, 2 L0} with N/L fixed
  bool include_gap_window = true;
};

struct MomentsTask {
  std::vector<double> p_list{2.0};
  std::vector<double> bump_centers;  // empty: band-1 center and lower edge
  double bump_width = -1.0;          // <0: lambda (M1+M2)/4, clean: 0.05 B
  bool width_family = true;          // w, w/2, w/4
  double t0 = 1.0;
  int doublings = 8;
  bool quadrature_check = true;
};

struct MobilityTask {
  std::string mode = "field";   // field | disorder-rescaled
  std::vector<double> values;   // B values or rescale lambdas
  int band = 1;
  int energy_points = 9;
  double gate_residual_fraction = 1.0 / 3.0;
  double gate_min_rate_length = 6.0;
};

struct ExperimentConfig {
  ModelConfig model;
  DisorderConfig disorder;
  RunConfig run;
  OutputConfig output;
  SpectrumTask spectrum;
  HallTask hall;
  WegnerTask wegner;
  MomentsTask moments;
  MobilityTask mobility;
  std::string preset;  // informational

  static ExperimentConfig preset_desk();
  // Strict parse: unknown keys are rejected, the flux mode is resolved, and
  // every guard that can be checked without diagonalizing is checked.
  static ExperimentConfig from_json_text(const std::string& text);
  // Accepts either a config file or an emitted manifest (object with a
  // "config" member).
  static ExperimentConfig from_file(const std::filesystem::path& path);

  std::string to_json_text() const;  // canonical resolved form, sorted keys
  // Hash of the canonical form minus run.workers and output.directory (both
  // are allowed to change between byte-identical reruns).
  std::uint64_t config_hash() const;

  MagneticTorus make_torus() const;
  CouplingLaw make_law() const;
  SingleSiteProfile make_profile() const;
  // Effective potential multiplier: rescaled laws follow the lambda=1
  // convention with the lambda dependence inside the law.
  double effective_lambda() const;
};

}  // namespace landaulab
