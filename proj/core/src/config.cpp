#include "landaulab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "landaulab/io.hpp"

namespace landaulab {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError(where + "." + key + ": expected a number");
  }
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw ConfigError(where + "." + key + ": expected an integer");
  }
  return obj[key].get<int>();
}

bool get_bool(const json& obj, const std::string& where, const std::string& key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    throw ConfigError(where + "." + key + ": expected a boolean");
  }
  return obj[key].get<bool>();
}

std::string get_string(const json& obj, const std::string& where,
                       const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw ConfigError(where + "." + key + ": expected a string");
  }
  return obj[key].get<std::string>();
}

std::vector<double> get_number_list(const json& obj, const std::string& where,
                                    const std::string& key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) {
    throw ConfigError(where + "." + key + ": expected an array of numbers");
  }
  for (const auto& v : obj[key]) {
    if (!v.is_number()) {
      throw ConfigError(where + "." + key + ": expected numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

// Smallest grid compatible with both resolution guards, aligned to unit
// cells when the side is an integer.
int auto_grid(double field, double side, int flux_quanta) {
  int need = std::max(4 * flux_quanta,
                      static_cast<int>(std::ceil(2.0 * side * std::sqrt(field))));
  need = std::max(need, 8);
  const double rounded = std::round(side);
  if (std::abs(side - rounded) < 1e-12 * std::max(1.0, side)) {
    const int cells = static_cast<int>(rounded);
    const int per_cell = std::max(4, (need + cells - 1) / cells);
    return cells * per_cell;
  }
  return need;
}

void parse_model(const json& j, ModelConfig& model) {
  check_keys(j, "model",
             {"B", "B_request", "L", "L_request", "N", "flux_mode"});
  const bool has_b = j.contains("B");
  const bool has_breq = j.contains("B_request");
  const bool has_l = j.contains("L");
  const bool has_lreq = j.contains("L_request");
  if (has_breq && has_lreq) {
    throw ConfigError("model: give at most one of B_request / L_request");
  }
  if ((has_b && has_breq) || (has_l && has_lreq)) {
    throw ConfigError("model: exact and requested values are exclusive");
  }

  if (has_lreq) {
    const double b = get_number(j, "model", "B", model.field);
    const double lreq = get_number(j, "model", "L_request", 0.0);
    if (!(b > 0.0) || !(lreq > 0.0)) {
      throw ConfigError("model: B and L_request must be > 0");
    }
    const FluxQuantization q = quantize_flux(b, lreq);
    model.field = q.field;
    model.side = q.side;
    model.flux_mode = "adjust-length";
  } else if (has_breq) {
    const double l = get_number(j, "model", "L", model.side);
    const double breq = get_number(j, "model", "B_request", 0.0);
    if (!(l > 0.0) || !(breq > 0.0)) {
      throw ConfigError("model: L and B_request must be > 0");
    }
    const FluxQuantization q = quantize_flux_fixed_length(l, breq);
    model.field = q.field;
    model.side = q.side;
    model.flux_mode = "adjust-field";
  } else {
    model.field = get_number(j, "model", "B", model.field);
    model.side = get_number(j, "model", "L", model.side);
    model.flux_mode = "exact";
    if (!(model.field > 0.0) || !(model.side > 0.0)) {
      throw ConfigError("model: B and L must be > 0");
    }
    const double flux = model.field * model.side * model.side / (2.0 * M_PI);
    if (std::abs(flux - std::round(flux)) > 1e-9 * std::max(1.0, flux) ||
        std::round(flux) < 0.5) {
      throw ConfigError(
          "model: B L^2/(2 pi) = " + std::to_string(flux) +
          " is not a positive integer; use L_request or B_request");
    }
  }
  const int flux_quanta = static_cast<int>(
      std::round(model.field * model.side * model.side / (2.0 * M_PI)));
  model.grid = get_int(j, "model", "N",
                       auto_grid(model.field, model.side, flux_quanta));
  if (model.grid < 2) throw ConfigError("model.N: must be >= 2");
}

void parse_law(const json& j, LawConfig& law) {
  check_keys(j, "disorder.law",
             {"kind", "M1", "M2", "base", "base_parameter", "lambda", "cutoff"});
  law.kind = get_string(j, "disorder.law", "kind", law.kind);
  if (law.kind == "uniform") {
    law.m1 = get_number(j, "disorder.law", "M1", law.m1);
    law.m2 = get_number(j, "disorder.law", "M2", law.m2);
    if (law.m1 < 0.0 || law.m2 < 0.0 || !(law.m1 + law.m2 > 0.0)) {
      throw ConfigError("disorder.law: need M1, M2 >= 0 with M1+M2 > 0");
    }
  } else if (law.kind == "rescaled") {
    law.base = get_string(j, "disorder.law", "base", law.base);
    law.base_parameter =
        get_number(j, "disorder.law", "base_parameter", law.base_parameter);
    law.rescale_lambda = get_number(j, "disorder.law", "lambda", law.rescale_lambda);
    law.cutoff = get_number(j, "disorder.law", "cutoff", law.cutoff);
    if (!(law.rescale_lambda > 0.0) || !(law.cutoff > 0.0)) {
      throw ConfigError("disorder.law: rescaled mode needs lambda > 0, cutoff > 0");
    }
    law.m1 = law.cutoff;
    law.m2 = law.cutoff;
  } else {
    throw ConfigError("disorder.law.kind: expected 'uniform' or 'rescaled'");
  }
}

void parse_profile(const json& j, ProfileConfig& profile) {
  check_keys(j, "disorder.profile",
             {"shape", "inner_radius", "outer_radius", "floor", "cap"});
  profile.shape = get_string(j, "disorder.profile", "shape", profile.shape);
  profile.inner_radius =
      get_number(j, "disorder.profile", "inner_radius", profile.inner_radius);
  profile.outer_radius =
      get_number(j, "disorder.profile", "outer_radius", profile.outer_radius);
  profile.floor = get_number(j, "disorder.profile", "floor", profile.floor);
  profile.cap = get_number(j, "disorder.profile", "cap", profile.cap);
}

}  // namespace

ExperimentConfig ExperimentConfig::preset_desk() {
  ExperimentConfig c;
  c.preset = "desk";
  return c;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }

  ExperimentConfig c;
  const std::string preset = j.is_object() && j.contains("preset") && j["preset"].is_string()
                                 ? j["preset"].get<std::string>()
                                 : "";
  if (!preset.empty()) {
    if (preset != "desk") throw ConfigError("preset: only 'desk' is defined");
    c = preset_desk();
  }

  check_keys(j, "config",
             {"preset", "model", "disorder", "run", "output", "spectrum",
              "hall", "wegner", "moments", "scan_mobility"});

  if (j.contains("model")) parse_model(j["model"], c.model);
  if (j.contains("disorder")) {
    const json& d = j["disorder"];
    check_keys(d, "disorder", {"lambda", "law", "profile"});
    c.disorder.lambda = get_number(d, "disorder", "lambda", c.disorder.lambda);
    if (c.disorder.lambda < 0.0) {
      throw ConfigError("disorder.lambda: must be >= 0");
    }
    if (d.contains("law")) parse_law(d["law"], c.disorder.law);
    if (d.contains("profile")) parse_profile(d["profile"], c.disorder.profile);
  }
  if (j.contains("run")) {
    const json& r = j["run"];
    check_keys(r, "run", {"seed", "realizations", "workers"});
    if (r.contains("seed")) {
      if (!r["seed"].is_number_unsigned() && !r["seed"].is_number_integer()) {
        throw ConfigError("run.seed: expected an unsigned integer");
      }
      c.run.seed = r["seed"].get<std::uint64_t>();
    }
    c.run.realizations = get_int(r, "run", "realizations", c.run.realizations);
    c.run.workers = get_int(r, "run", "workers", c.run.workers);
    if (c.run.realizations < 1) throw ConfigError("run.realizations: >= 1");
    if (c.run.workers < 1 || c.run.workers > 256) {
      throw ConfigError("run.workers: expected 1..256");
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"directory", "dump_disorder"});
    c.output.directory = get_string(o, "output", "directory", c.output.directory);
    c.output.dump_disorder =
        get_bool(o, "output", "dump_disorder", c.output.dump_disorder);
  }
  if (j.contains("spectrum")) {
    const json& s = j["spectrum"];
    check_keys(s, "spectrum", {"n_bands", "dos_bins"});
    c.spectrum.n_bands = get_int(s, "spectrum", "n_bands", c.spectrum.n_bands);
    c.spectrum.dos_bins = get_int(s, "spectrum", "dos_bins", c.spectrum.dos_bins);
    if (c.spectrum.n_bands < 1 || c.spectrum.dos_bins < 1) {
      throw ConfigError("spectrum: n_bands and dos_bins must be >= 1");
    }
  }
  if (j.contains("hall")) {
    const json& h = j["hall"];
    check_keys(h, "hall",
               {"E_grid", "band_points", "window_radius", "switches"});
    c.hall.energy_grid = get_number_list(h, "hall", "E_grid");
    c.hall.band_points = get_int(h, "hall", "band_points", c.hall.band_points);
    c.hall.window_radius =
        get_number(h, "hall", "window_radius", c.hall.window_radius);
    if (h.contains("switches")) {
      const auto sw = get_number_list(h, "hall", "switches");
      if (sw.size() != 2) {
        throw ConfigError("hall.switches: expected [r, s]");
      }
      c.hall.switch_r = sw[0];
      c.hall.switch_s = sw[1];
    }
    if (c.hall.band_points < 0) throw ConfigError("hall.band_points: >= 0");
  }
  if (j.contains("wegner")) {
    const json& w = j["wegner"];
    check_keys(w, "wegner", {"window_widths", "lengths", "include_gap_window"});
    c.wegner.window_widths = get_number_list(w, "wegner", "window_widths");
    c.wegner.include_gap_window =
        get_bool(w, "wegner", "include_gap_window", c.wegner.include_gap_window);
    if (w.contains("lengths")) {
      if (!w["lengths"].is_array()) {
        throw ConfigError("wegner.lengths: expected an array");
      }
      c.wegner.lengths.clear();
      for (const auto& entry : w["lengths"]) {
        check_keys(entry, "wegner.lengths[]", {"L", "N"});
        WegnerLength wl;
        wl.side = get_number(entry, "wegner.lengths[]", "L", 0.0);
        wl.grid = get_int(entry, "wegner.lengths[]", "N", 0);
        if (!(wl.side > 0.0) || wl.grid < 2) {
          throw ConfigError("wegner.lengths[]: need L > 0 and N >= 2");
        }
        c.wegner.lengths.push_back(wl);
      }
    }
  }
  if (j.contains("moments")) {
    const json& m = j["moments"];
    check_keys(m, "moments",
               {"p_list", "bump_centers", "bump_width", "width_family", "T0",
                "doublings", "quadrature_check"});
    if (m.contains("p_list")) c.moments.p_list = get_number_list(m, "moments", "p_list");
    c.moments.bump_centers = get_number_list(m, "moments", "bump_centers");
    c.moments.bump_width = get_number(m, "moments", "bump_width", c.moments.bump_width);
    c.moments.width_family =
        get_bool(m, "moments", "width_family", c.moments.width_family);
    c.moments.t0 = get_number(m, "moments", "T0", c.moments.t0);
    c.moments.doublings = get_int(m, "moments", "doublings", c.moments.doublings);
    c.moments.quadrature_check =
        get_bool(m, "moments", "quadrature_check", c.moments.quadrature_check);
    if (c.moments.p_list.empty()) throw ConfigError("moments.p_list: non-empty");
    for (const double p : c.moments.p_list) {
      if (p < 0.0) throw ConfigError("moments.p_list: p >= 0");
    }
    if (!(c.moments.t0 > 0.0)) throw ConfigError("moments.T0: > 0");
    if (c.moments.doublings < 4) throw ConfigError("moments.doublings: >= 4");
  }
  if (j.contains("scan_mobility")) {
    const json& s = j["scan_mobility"];
    check_keys(s, "scan_mobility",
               {"mode", "values", "band", "energy_points",
                "gate_residual_fraction", "gate_min_rate_length"});
    c.mobility.mode = get_string(s, "scan_mobility", "mode", c.mobility.mode);
    if (c.mobility.mode != "field" && c.mobility.mode != "disorder-rescaled") {
      throw ConfigError("scan_mobility.mode: 'field' or 'disorder-rescaled'");
    }
    c.mobility.values = get_number_list(s, "scan_mobility", "values");
    c.mobility.band = get_int(s, "scan_mobility", "band", c.mobility.band);
    c.mobility.energy_points =
        get_int(s, "scan_mobility", "energy_points", c.mobility.energy_points);
    c.mobility.gate_residual_fraction = get_number(
        s, "scan_mobility", "gate_residual_fraction", c.mobility.gate_residual_fraction);
    c.mobility.gate_min_rate_length = get_number(
        s, "scan_mobility", "gate_min_rate_length", c.mobility.gate_min_rate_length);
    if (c.mobility.band < 1 || c.mobility.energy_points < 3) {
      throw ConfigError("scan_mobility: band >= 1 and energy_points >= 3");
    }
  }

  // The constructors run the detailed value checks.
  c.make_profile();
  c.make_law();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  if (j.is_object() && j.contains("config")) {
    return from_json_text(j["config"].dump());
  }
  return from_json_text(buf.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["preset"] = preset;
  j["model"] = {{"B", model.field},
                {"L", model.side},
                {"N", model.grid},
                {"flux_mode", model.flux_mode}};
  json law;
  if (disorder.law.kind == "uniform") {
    law = {{"kind", "uniform"}, {"M1", disorder.law.m1}, {"M2", disorder.law.m2}};
  } else {
    law = {{"kind", "rescaled"},
           {"base", disorder.law.base},
           {"base_parameter", disorder.law.base_parameter},
           {"lambda", disorder.law.rescale_lambda},
           {"cutoff", disorder.law.cutoff}};
  }
  j["disorder"] = {{"lambda", disorder.lambda},
                   {"law", law},
                   {"profile",
                    {{"shape", disorder.profile.shape},
                     {"inner_radius", disorder.profile.inner_radius},
                     {"outer_radius", disorder.profile.outer_radius},
                     {"floor", disorder.profile.floor},
                     {"cap", disorder.profile.cap}}}};
  j["run"] = {{"seed", run.seed},
              {"realizations", run.realizations},
              {"workers", run.workers}};
  j["output"] = {{"directory", output.directory},
                 {"dump_disorder", output.dump_disorder}};
  j["spectrum"] = {{"n_bands", spectrum.n_bands}, {"dos_bins", spectrum.dos_bins}};
  j["hall"] = {{"E_grid", hall.energy_grid},
               {"band_points", hall.band_points},
               {"window_radius", hall.window_radius},
               {"switches", {hall.switch_r, hall.switch_s}}};
  json lengths = json::array();
  for (const auto& wl : wegner.lengths) {
    lengths.push_back({{"L", wl.side}, {"N", wl.grid}});
  }
  j["wegner"] = {{"window_widths", wegner.window_widths},
                 {"lengths", lengths},
                 {"include_gap_window", wegner.include_gap_window}};
  j["moments"] = {{"p_list", moments.p_list},
                  {"bump_centers", moments.bump_centers},
                  {"bump_width", moments.bump_width},
                  {"width_family", moments.width_family},
                  {"T0", moments.t0},
                  {"doublings", moments.doublings},
                  {"quadrature_check", moments.quadrature_check}};
  j["scan_mobility"] = {{"mode", mobility.mode},
                        {"values", mobility.values},
                        {"band", mobility.band},
                        {"energy_points", mobility.energy_points},
                        {"gate_residual_fraction", mobility.gate_residual_fraction},
                        {"gate_min_rate_length", mobility.gate_min_rate_length}};
  return j.dump(2);
}

std::uint64_t ExperimentConfig::config_hash() const {
  json j = json::parse(to_json_text());
  j["run"].erase("workers");
  j["output"].erase("directory");
  return io::fnv1a64(j.dump());
}

MagneticTorus ExperimentConfig::make_torus() const {
  return MagneticTorus::make(model.field, model.side, model.grid);
}

CouplingLaw ExperimentConfig::make_law() const {
  if (disorder.law.kind == "uniform") {
    return CouplingLaw::uniform(disorder.law.m1, disorder.law.m2);
  }
  return rescaled_law(
      make_base_density(disorder.law.base, disorder.law.base_parameter),
      disorder.law.rescale_lambda, disorder.law.cutoff, disorder.law.base);
}

SingleSiteProfile ExperimentConfig::make_profile() const {
  SingleSiteProfile p;
  if (disorder.profile.shape == "square_indicator") {
    p.shape = ProfileShape::SquareIndicator;
  } else if (disorder.profile.shape == "disc_indicator") {
    p.shape = ProfileShape::DiscIndicator;
  } else if (disorder.profile.shape == "cosine_bump") {
    p.shape = ProfileShape::CosineBump;
  } else {
    throw ConfigError("disorder.profile.shape: unknown shape '" +
                      disorder.profile.shape + "'");
  }
  p.inner_radius = disorder.profile.inner_radius;
  p.outer_radius = disorder.profile.outer_radius;
  p.floor = disorder.profile.floor;
  p.cap = disorder.profile.cap;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("disorder.profile: ") + e.what());
  }
  return p;
}

double ExperimentConfig::effective_lambda() const {
  return disorder.law.kind == "rescaled" ? 1.0 : disorder.lambda;
}

}  // namespace landaulab
