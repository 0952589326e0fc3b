#include "landaulab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "json.hpp"

#include "landaulab/bands.hpp"
#include "landaulab/dynamics.hpp"
#include "landaulab/hall.hpp"
#include "landaulab/io.hpp"
#include "landaulab/localization.hpp"
#include "landaulab/parallel.hpp"
#include "landaulab/rng.hpp"

namespace landaulab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Emitted before any result file; rewritten with wall time and the resolved
// tolerance set once the command finishes.
void write_manifest(const fs::path& dir, const std::string& command,
                    const ExperimentConfig& config, const json& tolerances,
                    double wall_seconds) {
  json m;
  m["code_version"] = kVersion;
  m["command"] = command;
  m["config"] = json::parse(config.to_json_text());
  m["config_hash"] = hex64(config.config_hash());
  json seeds = json::array();
  for (int r = 0; r < config.run.realizations; ++r) {
    seeds.push_back(hex64(rng::realization_seed(config.run.seed, r)));
  }
  m["realization_seeds"] = seeds;
  m["tolerances"] = tolerances;
  if (wall_seconds >= 0.0) {
    m["wall_seconds"] = wall_seconds;
  } else {
    m["wall_seconds"] = nullptr;
  }
  io::write_text_file(dir / "manifest.json", m.dump(2) + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

MeanStderr reduce(const std::vector<double>& xs) {
  MeanStderr out;
  const int n = static_cast<int>(xs.size());
  if (n == 0) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / n;
  if (n >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_of_mean = std::sqrt(ss / (static_cast<double>(n) * (n - 1)));
  }
  return out;
}

json band_report_to_json(const BandReport& report) {
  json bands = json::array();
  for (const BandInterval& b : report.bands) {
    bands.push_back({{"band", b.band},
                     {"window_lo", b.window_lo},
                     {"window_hi", b.window_hi},
                     {"lo", b.lo},
                     {"hi", b.hi},
                     {"count_window", b.count_window},
                     {"count_nearest", b.count_nearest},
                     {"gap_to_next", b.gap_to_next}});
  }
  return {{"bands", bands},
          {"disjoint", report.disjoint},
          {"overlap_flag", report.overlap_flag},
          {"containment_ok", report.containment_ok},
          {"lambda", report.lambda},
          {"M1", report.m1},
          {"M2", report.m2},
          {"scan_ceiling", report.scan_ceiling},
          {"total_below_ceiling", report.total_below_ceiling}};
}

json clean_reference_to_json(const CleanReference& ref) {
  return {{"flux_quanta", ref.flux_quanta}, {"n_bands", ref.n_bands},
          {"mean", ref.mean},               {"min", ref.min},
          {"max", ref.max},                 {"eps_disc", ref.eps_disc},
          {"scan_ceiling", ref.scan_ceiling}};
}

void dump_disorder_csv(const fs::path& dir, const ExperimentConfig& config,
                       const MagneticTorus& torus, const CouplingLaw& law,
                       const SingleSiteProfile& profile,
                       std::vector<std::string>& files) {
  for (int r = 0; r < config.run.realizations; ++r) {
    const DisorderRealization omega =
        sample_disorder(config.run.seed, r, law, profile, torus);
    const std::string name = "disorder_r" + std::to_string(r) + ".csv";
    io::CsvWriter csv(dir / name);
    csv.header({"i1", "i2", "omega"});
    for (int c2 = 0; c2 < omega.cells_per_side; ++c2) {
      for (int c1 = 0; c1 < omega.cells_per_side; ++c1) {
        csv.row({io::format_int(c1), io::format_int(c2),
                 io::format_double(omega.coupling(c1, c2))});
      }
    }
    files.push_back(name);
  }
}

fs::path prepare_directory(const ExperimentConfig& config) {
  fs::path dir(config.output.directory);
  fs::create_directories(dir);
  return dir;
}

// Broadened window edges for gap placement.
double window_lo(const CleanReference& ref, int band, double lambda, double m1) {
  return ref.mean[band - 1] - lambda * m1 - ref.eps_disc[band - 1];
}
double window_hi(const CleanReference& ref, int band, double lambda, double m2) {
  return ref.mean[band - 1] + lambda * m2 + ref.eps_disc[band - 1];
}

// Representative energy inside each spectral gap G_0 .. G_{n_bands-1}.
std::vector<double> gap_energies(const CleanReference& ref, double lambda,
                                 double m1, double m2) {
  std::vector<double> energies;
  const double below = window_lo(ref, 1, lambda, m1) -
                       0.25 * (ref.mean.size() > 1
                                   ? ref.mean[1] - ref.mean[0]
                                   : ref.mean[0]);
  energies.push_back(below);
  for (int n = 1; n < static_cast<int>(ref.mean.size()); ++n) {
    const double top = window_hi(ref, n, lambda, m2);
    const double bottom = window_lo(ref, n + 1, lambda, m1);
    energies.push_back(0.5 * (top + bottom));
  }
  return energies;
}

}  // namespace

CommandOutcome cmd_spectrum(const ExperimentConfig& config) {
  Timer timer;
  const MagneticTorus torus = config.make_torus();
  const GaugeField gauge = GaugeField::landau(torus);
  const CouplingLaw law = config.make_law();
  const SingleSiteProfile profile = config.make_profile();
  const double lambda = config.effective_lambda();

  const fs::path dir = prepare_directory(config);
  write_manifest(dir, "spectrum", config, json::object(), -1.0);
  std::vector<std::string> files{"manifest.json"};

  const CleanReference ref =
      build_clean_reference(torus, gauge, config.spectrum.n_bands);
  const auto spectra =
      disorder_spectra(torus, gauge, lambda, law, profile,
                       config.run.realizations, config.run.seed,
                       config.run.workers);

  json reals = json::array();
  bool disjoint_all = true, overlap_any = false, containment_all = true;
  for (const RealVector& ev : spectra) {
    const BandReport report = band_report(ev, lambda, law, ref);
    disjoint_all = disjoint_all && report.disjoint;
    overlap_any = overlap_any || report.overlap_flag;
    containment_all = containment_all && report.containment_ok;
    reals.push_back(band_report_to_json(report));
  }
  json bands_json = {{"clean_reference", clean_reference_to_json(ref)},
                     {"aggregate",
                      {{"disjoint_all", disjoint_all},
                       {"overlap_any", overlap_any},
                       {"containment_all", containment_all},
                       {"realizations", config.run.realizations}}},
                     {"realizations", reals}};
  io::write_text_file(dir / "bands.json", bands_json.dump(2) + "\n");
  files.push_back("bands.json");

  // DOS over the broadened window span, clean bands padded either side.
  const double b = torus.field();
  const double lo = window_lo(ref, 1, lambda, law.m1()) - 0.1 * b;
  const double hi =
      window_hi(ref, config.spectrum.n_bands, lambda, law.m2()) + 0.1 * b;
  std::vector<double> edges;
  for (int k = 0; k <= config.spectrum.dos_bins; ++k) {
    edges.push_back(lo + (hi - lo) * k / config.spectrum.dos_bins);
  }
  const DosHistogram dos = density_of_states(spectra, edges, torus.side());
  io::CsvWriter csv(dir / "dos.csv");
  csv.header({"E_lo", "E_hi", "mean_count", "stderr_count", "density"});
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    csv.row({io::format_double(dos.edges[k]), io::format_double(dos.edges[k + 1]),
             io::format_double(dos.mean_count[k]),
             io::format_double(dos.stderr_count[k]),
             io::format_double(dos.density[k])});
  }
  files.push_back("dos.csv");

  if (config.output.dump_disorder) {
    dump_disorder_csv(dir, config, torus, law, profile, files);
  }

  const json tolerances = {{"eps_disc", ref.eps_disc},
                           {"scan_ceiling", ref.scan_ceiling},
                           {"dos_range", {lo, hi}}};
  write_manifest(dir, "spectrum", config, tolerances, timer.seconds());
  return {dir, files, timer.seconds()};
}

CommandOutcome cmd_hall(const ExperimentConfig& config) {
  Timer timer;
  const MagneticTorus torus = config.make_torus();
  const GaugeField gauge = GaugeField::landau(torus);
  const CouplingLaw law = config.make_law();
  const SingleSiteProfile profile = config.make_profile();
  const double lambda = config.effective_lambda();

  const double window_radius = config.hall.window_radius > 0.0
                                   ? config.hall.window_radius
                                   : default_window_radius(torus);
  SwitchPair switches = SwitchPair::centered(torus);
  if (config.hall.switch_r > 0.0) switches.r = config.hall.switch_r;
  if (config.hall.switch_s > 0.0) switches.s = config.hall.switch_s;
  if (!switches_admissible(torus, switches, window_radius)) {
    throw GuardError("cmd_hall: switch placement inadmissible for the window");
  }

  const fs::path dir = prepare_directory(config);
  write_manifest(dir, "hall", config, json::object(), -1.0);
  std::vector<std::string> files{"manifest.json"};

  const CleanReference ref = build_clean_reference(torus, gauge, 3);
  std::vector<double> energies = config.hall.energy_grid;
  if (energies.empty()) {
    energies = gap_energies(ref, lambda, law.m1(), law.m2());
    for (int n = 1; n <= 3 && config.hall.band_points > 0; ++n) {
      const double lo = window_lo(ref, n, lambda, law.m1());
      const double hi = window_hi(ref, n, lambda, law.m2());
      for (int k = 1; k <= config.hall.band_points; ++k) {
        energies.push_back(lo + (hi - lo) * k / (config.hall.band_points + 1));
      }
    }
    std::sort(energies.begin(), energies.end());
  }

  struct RealizationRows {
    std::vector<HallTraceRow> rows;
    std::vector<bool> gate;
  };
  std::vector<RealizationRows> results(config.run.realizations);
  parallel_for(config.run.realizations, config.run.workers, [&](int r) {
    const DisorderRealization omega =
        sample_disorder(config.run.seed, r, law, profile, torus);
    const HermitianOperator h =
        build_hamiltonian(torus, gauge, omega.potential, lambda);
    const SpectralDecomposition spec = diagonalize(h);
    RealizationRows out;
    out.rows = hall_trace(spec, torus, energies, switches, window_radius);
    for (const double e : energies) {
      const FermiProjection p = fermi_projection(spec, e);
      const DecayProfile prof = decay_profile(p, torus);
      out.gate.push_back(passes_decay_gate(prof, torus));
    }
    results[r] = std::move(out);
  });

  for (int r = 0; r < config.run.realizations; ++r) {
    const std::string name = "hall_trace_r" + std::to_string(r) + ".csv";
    io::CsvWriter csv(dir / name);
    csv.header({"E", "re_sigma", "truncation_estimate", "bott", "bott_residue",
                "rank", "decay_gate"});
    for (std::size_t k = 0; k < energies.size(); ++k) {
      const HallTraceRow& row = results[r].rows[k];
      csv.row({io::format_double(row.energy), io::format_double(row.re_sigma),
               io::format_double(row.truncation_estimate),
               io::format_int(row.bott), io::format_double(row.bott_residue),
               io::format_int(row.rank),
               io::format_int(results[r].gate[k] ? 1 : 0)});
    }
    files.push_back(name);
  }

  io::CsvWriter summary(dir / "hall_summary.csv");
  summary.header({"E", "re_sigma_mean", "re_sigma_stderr", "truncation_mean",
                  "bott_mean", "bott_residue_max", "gate_pass_fraction",
                  "rank_mean"});
  for (std::size_t k = 0; k < energies.size(); ++k) {
    std::vector<double> sigma, trunc, bott, rank;
    double residue_max = 0.0;
    int gate_pass = 0;
    for (int r = 0; r < config.run.realizations; ++r) {
      const HallTraceRow& row = results[r].rows[k];
      sigma.push_back(row.re_sigma);
      trunc.push_back(row.truncation_estimate);
      bott.push_back(row.bott);
      rank.push_back(row.rank);
      residue_max = std::max(residue_max, row.bott_residue);
      gate_pass += results[r].gate[k] ? 1 : 0;
    }
    const MeanStderr s = reduce(sigma);
    summary.row({io::format_double(energies[k]), io::format_double(s.mean),
                 io::format_double(s.stderr_of_mean),
                 io::format_double(reduce(trunc).mean),
                 io::format_double(reduce(bott).mean),
                 io::format_double(residue_max),
                 io::format_double(static_cast<double>(gate_pass) /
                                   config.run.realizations),
                 io::format_double(reduce(rank).mean)});
  }
  files.push_back("hall_summary.csv");

  const json tolerances = {{"window_radius", window_radius},
                           {"switches", {switches.r, switches.s}},
                           {"eps_disc", ref.eps_disc},
                           {"decay_gate",
                            {{"residual_fraction", DecayGate{}.residual_fraction},
                             {"min_rate_length", DecayGate{}.min_rate_length}}}};
  write_manifest(dir, "hall", config, tolerances, timer.seconds());
  return {dir, files, timer.seconds()};
}

CommandOutcome cmd_wegner(const ExperimentConfig& config) {
  Timer timer;
  const CouplingLaw law = config.make_law();
  const SingleSiteProfile profile = config.make_profile();
  const double lambda = config.effective_lambda();
  const double b = config.model.field;

  std::vector<WegnerLength> lengths = config.wegner.lengths;
  if (lengths.empty()) {
    // L0 and 2 L0 at fixed B with N/L fixed; requires an integer-flux L0.
    double l0 = 0.0;
    for (int cand = 1; cand <= 64; ++cand) {
      const double flux = b * cand * cand / (2.0 * M_PI);
      if (std::abs(flux - std::round(flux)) < 1e-9) {
        l0 = cand;
        break;
      }
    }
    if (l0 == 0.0) {
      throw ConfigError(
          "wegner: no integer side with integer flux; give wegner.lengths");
    }
    const int per_cell = 12;
    lengths.push_back({l0, static_cast<int>(l0) * per_cell});
    lengths.push_back({2.0 * l0, 2 * static_cast<int>(l0) * per_cell});
  }

  // Guards for every size before any eigensolve.
  std::vector<MagneticTorus> tori;
  for (const WegnerLength& wl : lengths) {
    tori.push_back(MagneticTorus::make(b, wl.side, wl.grid));
  }

  const fs::path dir = prepare_directory(config);
  write_manifest(dir, "wegner", config, json::object(), -1.0);
  std::vector<std::string> files{"manifest.json"};

  // Windows pinned by the smallest torus: bulk widths around the band-1
  // center plus one window deep in the first gap.
  const GaugeField gauge0 = GaugeField::landau(tori.front());
  const CleanReference ref0 = build_clean_reference(tori.front(), gauge0, 2);
  std::vector<double> widths = config.wegner.window_widths;
  if (widths.empty()) widths = {0.02 * b, 0.05 * b, 0.1 * b};

  struct NamedWindow {
    EnergyWindow window;
    std::string kind;
  };
  std::vector<NamedWindow> windows;
  for (const double w : widths) {
    windows.push_back({{ref0.mean[0] - 0.5 * w, ref0.mean[0] + 0.5 * w}, "bulk"});
  }
  if (config.wegner.include_gap_window) {
    const double top = window_hi(ref0, 1, lambda, law.m2());
    const double bottom = window_lo(ref0, 2, lambda, law.m1());
    const double mid = 0.5 * (top + bottom);
    windows.push_back({{mid - 0.025 * b, mid + 0.025 * b}, "gap"});
  }

  io::CsvWriter csv(dir / "wegner.csv");
  csv.header({"L", "N", "kind", "J_lo", "J_hi", "width", "mean_count",
              "stderr_count", "normalized", "stderr_normalized",
              "realizations"});
  for (std::size_t t = 0; t < tori.size(); ++t) {
    const GaugeField gauge = GaugeField::landau(tori[t]);
    const auto spectra =
        disorder_spectra(tori[t], gauge, lambda, law, profile,
                         config.run.realizations, config.run.seed,
                         config.run.workers);
    std::vector<EnergyWindow> plain;
    plain.reserve(windows.size());
    for (const auto& nw : windows) plain.push_back(nw.window);
    const auto stats = wegner_scan(spectra, plain, tori[t].side());
    for (std::size_t k = 0; k < stats.size(); ++k) {
      const WegnerStatistic& s = stats[k];
      csv.row({io::format_double(tori[t].side()),
               io::format_int(tori[t].grid_per_side()), windows[k].kind,
               io::format_double(s.window.lo), io::format_double(s.window.hi),
               io::format_double(s.window.width()),
               io::format_double(s.mean_count),
               io::format_double(s.stderr_count),
               io::format_double(s.normalized),
               io::format_double(s.stderr_normalized),
               io::format_int(s.realizations)});
    }
  }
  files.push_back("wegner.csv");

  json window_list = json::array();
  for (const auto& nw : windows) {
    window_list.push_back(
        {{"lo", nw.window.lo}, {"hi", nw.window.hi}, {"kind", nw.kind}});
  }
  const json tolerances = {{"windows", window_list},
                           {"band1_center", ref0.mean[0]}};
  write_manifest(dir, "wegner", config, tolerances, timer.seconds());
  return {dir, files, timer.seconds()};
}

CommandOutcome cmd_moments(const ExperimentConfig& config) {
  Timer timer;
  const MagneticTorus torus = config.make_torus();
  const GaugeField gauge = GaugeField::landau(torus);
  const CouplingLaw law = config.make_law();
  const SingleSiteProfile profile = config.make_profile();
  const double lambda = config.effective_lambda();
  const double b = torus.field();

  const fs::path dir = prepare_directory(config);
  write_manifest(dir, "moments", config, json::object(), -1.0);
  std::vector<std::string> files{"manifest.json"};

  const CleanReference ref = build_clean_reference(torus, gauge, 2);
  double width = config.moments.bump_width;
  if (width <= 0.0) {
    const double band_half = lambda * 0.5 * (law.m1() + law.m2());
    width = band_half > 0.0 ? 0.4 * band_half : 0.05 * b;
  }
  std::vector<double> centers = config.moments.bump_centers;
  if (centers.empty()) {
    centers.push_back(ref.mean[0]);  // band center
    centers.push_back(window_lo(ref, 1, lambda, law.m1()) + width);  // edge
  }
  std::vector<double> widths{width};
  if (config.moments.width_family) {
    widths.push_back(0.5 * width);
    widths.push_back(0.25 * width);
  }
  std::vector<double> times;
  for (int k = 0; k <= config.moments.doublings; ++k) {
    times.push_back(config.moments.t0 * std::pow(2.0, k));
  }

  struct SeriesKey {
    double center, width, p;
  };
  std::vector<SeriesKey> keys;
  for (const double c : centers) {
    for (const double w : widths) {
      for (const double p : config.moments.p_list) {
        keys.push_back({c, w, p});
      }
    }
  }

  struct RealizationSeries {
    // [key][time] exact-kernel values; worst evaluator gap per key
    std::vector<std::vector<double>> values;
    std::vector<double> evaluator_gap;
    std::vector<double> moment_zero;
  };
  std::vector<RealizationSeries> per_real(config.run.realizations);
  parallel_for(config.run.realizations, config.run.workers, [&](int r) {
    const DisorderRealization omega =
        sample_disorder(config.run.seed, r, law, profile, torus);
    const HermitianOperator h =
        build_hamiltonian(torus, gauge, omega.potential, lambda);
    const SpectralDecomposition spec = diagonalize(h);
    RealizationSeries out;
    out.values.resize(keys.size());
    out.evaluator_gap.assign(keys.size(), 0.0);
    out.moment_zero.assign(keys.size(), 0.0);
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const EnergyBump bump{keys[k].center, keys[k].width};
      const MomentEvaluator eval(spec, torus, bump, keys[k].p);
      out.moment_zero[k] = eval.instant(0.0);
      out.values[k].reserve(times.size());
      for (const double T : times) {
        const double exact = eval.time_averaged(T);
        out.values[k].push_back(exact);
        if (config.moments.quadrature_check) {
          const double quadrature = eval.time_averaged_quadrature(T);
          const double scale = std::max({std::abs(exact), std::abs(quadrature),
                                         1e-30});
          out.evaluator_gap[k] = std::max(out.evaluator_gap[k],
                                          std::abs(exact - quadrature) / scale);
        }
      }
    }
    per_real[r] = std::move(out);
  });

  json summary = json::array();
  for (std::size_t k = 0; k < keys.size(); ++k) {
    TransportSeries avg;
    avg.p = keys[k].p;
    avg.times = times;
    avg.values.assign(times.size(), 0.0);
    double moment_zero = 0.0;
    double gap = 0.0;
    for (int r = 0; r < config.run.realizations; ++r) {
      for (std::size_t t = 0; t < times.size(); ++t) {
        avg.values[t] += per_real[r].values[k][t];
      }
      moment_zero += per_real[r].moment_zero[k];
      gap = std::max(gap, per_real[r].evaluator_gap[k]);
    }
    for (double& v : avg.values) v /= config.run.realizations;
    moment_zero /= config.run.realizations;

    const std::string name = "moments_c" + std::to_string(k) + ".csv";
    io::CsvWriter csv(dir / name);
    csv.header({"T", "value", "evaluator"});
    for (std::size_t t = 0; t < times.size(); ++t) {
      csv.row({io::format_double(times[t]), io::format_double(avg.values[t]),
               avg.evaluator});
    }
    files.push_back(name);

    const TransportFit fit = transport_fit(avg);
    const double bound_ratio = torus_bound_ratio(avg, torus, moment_zero);
    summary.push_back({{"p", keys[k].p},
                       {"center", keys[k].center},
                       {"width", keys[k].width},
                       {"beta_hat", fit.beta_hat},
                       {"residual", fit.residual},
                       {"reliable", fit.reliable},
                       {"pre_knee_points", fit.pre_knee_points},
                       {"knee_T", std::isnan(fit.knee_time)
                                      ? json(nullptr)
                                      : json(fit.knee_time)},
                       {"ballistic_constant", fit.ballistic_constant},
                       {"ballistic_ok", fit.ballistic_constant <= 1.2},
                       {"torus_bound_ratio", bound_ratio},
                       {"max_evaluator_gap", gap},
                       {"series_file", name}});
  }
  io::write_text_file(dir / "moments_summary.json", summary.dump(2) + "\n");
  files.push_back("moments_summary.json");

  const json tolerances = {{"bump_width", width},
                           {"bump_centers", centers},
                           {"T_grid", times},
                           {"filter_floor", 1e-14}};
  write_manifest(dir, "moments", config, tolerances, timer.seconds());
  return {dir, files, timer.seconds()};
}

CommandOutcome cmd_scan_mobility(const ExperimentConfig& config) {
  Timer timer;
  const CouplingLaw base_law = config.make_law();
  const SingleSiteProfile profile = config.make_profile();
  const int band = config.mobility.band;
  const DecayGate gate{config.mobility.gate_residual_fraction,
                       config.mobility.gate_min_rate_length};

  if (config.mobility.values.empty()) {
    throw ConfigError("scan_mobility.values: non-empty list required");
  }

  const fs::path dir = prepare_directory(config);
  write_manifest(dir, "scan-mobility", config, json::object(), -1.0);
  std::vector<std::string> files{"manifest.json"};

  json points = json::array();
  std::vector<double> edge_distances;
  std::vector<double> interval_widths;

  for (const double value : config.mobility.values) {
    // Per-point model: field scan quantizes B at fixed L; rescaled-disorder
    // scan keeps the torus and moves the law.
    double field = config.model.field;
    double lambda = config.effective_lambda();
    CouplingLaw law = base_law;
    if (config.mobility.mode == "field") {
      const FluxQuantization q =
          quantize_flux_fixed_length(config.model.side, value);
      if (std::abs(q.field - value) > 1e-9 * std::max(1.0, value)) {
        std::cerr << "scan-mobility: B=" << value
                  << " is not flux-quantized at L=" << config.model.side
                  << "; adjusted to B=" << q.field << "\n";
      }
      field = q.field;
    } else {
      law = rescaled_law(make_base_density(config.disorder.law.base,
                                           config.disorder.law.base_parameter),
                         value, config.disorder.law.cutoff,
                         config.disorder.law.base);
      lambda = 1.0;
    }

    // Grid: keep unit cells aligned and both resolution guards satisfied.
    const double side = config.model.side;
    const int flux = static_cast<int>(
        std::round(field * side * side / (2.0 * M_PI)));
    int need = std::max(4 * flux,
                        static_cast<int>(std::ceil(2.0 * side * std::sqrt(field))));
    const int cells = static_cast<int>(std::round(side));
    const int per_cell = std::max(4, (need + cells - 1) / cells);
    const MagneticTorus torus = MagneticTorus::make(field, side, cells * per_cell);
    const GaugeField gauge = GaugeField::landau(torus);
    const CleanReference ref = build_clean_reference(torus, gauge, band + 1);

    json point = {{"value", value},
                  {"field", field},
                  {"grid", torus.grid_per_side()},
                  {"band", band},
                  {"clean_level", ref.mean[band - 1]}};

    if (lambda == 0.0) {
      point["degenerate"] = true;
      points.push_back(point);
      continue;
    }
    point["degenerate"] = false;

    const double lo = window_lo(ref, band, lambda, law.m1());
    const double hi = window_hi(ref, band, lambda, law.m2());
    const double margin = 0.05 * (hi - lo);
    std::vector<double> energies;
    for (int k = 0; k < config.mobility.energy_points; ++k) {
      energies.push_back(lo + margin +
                         (hi - lo - 2.0 * margin) * k /
                             (config.mobility.energy_points - 1));
    }

    std::vector<std::vector<bool>> votes(config.run.realizations);
    parallel_for(config.run.realizations, config.run.workers, [&](int r) {
      const DisorderRealization omega =
          sample_disorder(config.run.seed, r, law, profile, torus);
      const HermitianOperator h =
          build_hamiltonian(torus, gauge, omega.potential, lambda);
      const SpectralDecomposition spec = diagonalize(h);
      std::vector<bool> pass;
      pass.reserve(energies.size());
      for (const double e : energies) {
        const FermiProjection p = fermi_projection(spec, e);
        const DecayProfile prof = decay_profile(p, torus);
        pass.push_back(passes_decay_gate(prof, torus, gate));
      }
      votes[r] = std::move(pass);
    });

    std::vector<bool> majority;
    json vote_fractions = json::array();
    for (std::size_t k = 0; k < energies.size(); ++k) {
      int yes = 0;
      for (int r = 0; r < config.run.realizations; ++r) {
        yes += votes[r][k] ? 1 : 0;
      }
      const double fraction =
          static_cast<double>(yes) / config.run.realizations;
      vote_fractions.push_back(fraction);
      majority.push_back(2 * yes > config.run.realizations);
    }
    const ProxyIntervalPair proxy = proxy_intervals(energies, majority);
    point["energies"] = energies;
    point["gate_fraction"] = vote_fractions;
    point["proxy"] = {
        {"lower", proxy.lower_found
                      ? json({{"lo", proxy.lower_lo}, {"hi", proxy.lower_hi}})
                      : json(nullptr)},
        {"upper", proxy.upper_found
                      ? json({{"lo", proxy.upper_lo}, {"hi", proxy.upper_hi}})
                      : json(nullptr)}};

    const double level = ref.mean[band - 1];
    double distance = std::numeric_limits<double>::quiet_NaN();
    double pair_width = std::numeric_limits<double>::quiet_NaN();
    if (proxy.lower_found && proxy.upper_found) {
      distance = std::max(std::abs(proxy.lower_hi - level),
                          std::abs(proxy.upper_lo - level));
      pair_width = proxy.upper_lo - proxy.lower_hi;
    } else if (proxy.lower_found) {
      distance = std::abs(proxy.lower_hi - level);
    } else if (proxy.upper_found) {
      distance = std::abs(proxy.upper_lo - level);
    }
    point["edge_distance"] = std::isnan(distance) ? json(nullptr) : json(distance);
    point["delocalized_width"] =
        std::isnan(pair_width) ? json(nullptr) : json(pair_width);
    edge_distances.push_back(distance);
    interval_widths.push_back(pair_width);
    points.push_back(point);
  }

  auto non_increasing = [](const std::vector<double>& xs) {
    bool any = false;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      if (std::isnan(xs[k]) || std::isnan(xs[k + 1])) return false;
      if (xs[k + 1] > xs[k] + 1e-12) return false;
      any = true;
    }
    return any;
  };

  json scan = {{"mode", config.mobility.mode},
               {"band", band},
               {"points", points},
               {"monotone_shrink_edge_distance", non_increasing(edge_distances)},
               {"monotone_shrink_width", non_increasing(interval_widths)}};
  io::write_text_file(dir / "mobility_scan.json", scan.dump(2) + "\n");
  files.push_back("mobility_scan.json");

  const json tolerances = {{"gate",
                            {{"residual_fraction", gate.residual_fraction},
                             {"min_rate_length", gate.min_rate_length}}}};
  write_manifest(dir, "scan-mobility", config, tolerances, timer.seconds());
  return {dir, files, timer.seconds()};
}

CommandOutcome run_command(const std::string& name,
                           const ExperimentConfig& config) {
  if (name == "spectrum") return cmd_spectrum(config);
  if (name == "hall") return cmd_hall(config);
  if (name == "wegner") return cmd_wegner(config);
  if (name == "moments") return cmd_moments(config);
  if (name == "scan-mobility") return cmd_scan_mobility(config);
  throw ConfigError("unknown command: " + name);
}

}  // namespace landaulab
