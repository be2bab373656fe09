#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "modedec/units.hpp"

namespace modedec::app {

namespace {

using nlohmann::json;

constexpr double kDegree = std::numbers::pi / 180.0;

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

// Frequency given either as "<base>_khz" or "<base>_rad_s"; both at once is
// ambiguous.
std::optional<double> frequency(const json& obj, const std::string& section,
                                const std::string& base) {
  const auto khz_key = base + "_khz";
  const auto rad_key = base + "_rad_s";
  const json* khz = find(obj, khz_key.c_str());
  const json* rad = find(obj, rad_key.c_str());
  if (khz && rad) throw ConfigError(section + base, "give either _khz or _rad_s, not both");
  if (khz) return khz_to_rad_s(number(*khz, section + khz_key));
  if (rad) return number(*rad, section + rad_key);
  return std::nullopt;
}

std::optional<std::vector<double>> frequency_list(const json& obj, const std::string& section,
                                                  const std::string& base) {
  const auto khz_key = base + "_khz";
  const auto rad_key = base + "_rad_s";
  const json* khz = find(obj, khz_key.c_str());
  const json* rad = find(obj, rad_key.c_str());
  if (khz && rad) throw ConfigError(section + base, "give either _khz or _rad_s, not both");
  const json* list = khz ? khz : rad;
  if (!list) return std::nullopt;
  const std::string field = section + (khz ? khz_key : rad_key);
  if (!list->is_array()) throw ConfigError(field, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const double v = number((*list)[i], fmt::format("{}[{}]", field, i));
    out.push_back(khz ? khz_to_rad_s(v) : v);
  }
  return out;
}

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(section, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(section.empty() ? key : section + "." + key, "unknown key");
  }
}

}  // namespace

Baseline parse_baseline(const std::string& name) {
  if (name == "mode") return Baseline::mode;
  if (name == "tppm") return Baseline::tppm;
  if (name == "cw") return Baseline::cw;
  throw ConfigError("baseline", "expected one of mode, tppm, cw");
}

std::string to_string(Baseline baseline) {
  switch (baseline) {
    case Baseline::mode: return "mode";
    case Baseline::tppm: return "tppm";
    case Baseline::cw: return "cw";
  }
  return "mode";
}

OffsetGrid parse_offsets_khz(const std::string& spec) {
  std::istringstream in(spec);
  std::string lo, hi, n;
  if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') || !std::getline(in, n)) {
    throw ConfigError("--offsets", "expected min:max:count in kHz");
  }
  try {
    std::size_t used = 0;
    const long long c = std::stoll(n, &used);
    if (used != n.size() || c < 1) throw ConfigError("--offsets", "count must be >= 1");
    return {khz_to_rad_s(std::stod(lo)), khz_to_rad_s(std::stod(hi)),
            static_cast<std::size_t>(c)};
  } catch (const std::logic_error&) {
    throw ConfigError("--offsets", "expected min:max:count in kHz");
  }
}

std::vector<double> parse_epsilon_list(const std::string& spec) {
  std::vector<double> out;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("--epsilon", "'" + item + "' is not a number");
    }
  }
  if (out.empty()) throw ConfigError("--epsilon", "empty list");
  return out;
}

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.design = ModeDesign::uniform(6, khz_to_rad_s(4.8), khz_to_rad_s(22.5));
  cfg.tppm_phase = 15.0 * kDegree;
  cfg.tppm_flip = 165.0 * kDegree;
  cfg.gap_threshold = hz_to_rad_s(500.0);
  return cfg;
}

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig cfg = defaults();
  check_keys(doc, "", {"design", "simulation", "baseline", "cw", "tppm", "gap", "compare",
                       "output", "threads"});

  if (const json* d = find(doc, "design")) {
    check_keys(*d, "design", {"n_frames", "w0_khz", "w0_rad_s", "w_levels_khz",
                              "w_levels_rad_s", "c0_khz", "c0_rad_s", "delta"});
    std::size_t n = cfg.design.n_frames();
    if (const json* v = find(*d, "n_frames")) n = count(*v, "design.n_frames");
    double w0 = cfg.design.w0();
    if (auto v = frequency(*d, "design.", "w0")) w0 = *v;
    if (auto levels = frequency_list(*d, "design.", "w_levels")) {
      if (levels->empty()) throw ConfigError("design.w_levels", "needs at least w_0");
      if (find(*d, "n_frames") && levels->size() != n + 1) {
        throw ConfigError("design.n_frames", "must equal len(w_levels) - 1");
      }
      if (frequency(*d, "design.", "w0")) {
        throw ConfigError("design.w0", "give either w0 or w_levels, not both");
      }
      cfg.design.w_levels = *levels;
    } else {
      cfg.design.w_levels.assign(n + 1, w0);
    }
    if (auto v = frequency(*d, "design.", "c0")) cfg.design.c0 = *v;
    if (const json* v = find(*d, "delta")) cfg.design.delta_design = number(*v, "design.delta");
  }

  if (const json* s = find(doc, "simulation")) {
    check_keys(*s, "simulation", {"j_hz", "duration_ms", "duration_s", "dt_us", "record_us",
                                  "omega0_khz", "omega0_rad_s", "offsets", "epsilon", "engine"});
    if (const json* v = find(*s, "j_hz")) cfg.j_hz = number(*v, "simulation.j_hz");
    if (const json* v = find(*s, "duration_ms")) {
      cfg.duration = ms_to_s(number(*v, "simulation.duration_ms"));
    }
    if (const json* v = find(*s, "duration_s")) {
      cfg.duration = number(*v, "simulation.duration_s");
    }
    if (const json* v = find(*s, "dt_us")) cfg.dt = us_to_s(number(*v, "simulation.dt_us"));
    if (const json* v = find(*s, "record_us")) {
      cfg.record_interval = us_to_s(number(*v, "simulation.record_us"));
    }
    if (auto v = frequency(*s, "simulation.", "omega0")) cfg.omega0 = *v;
    if (const json* o = find(*s, "offsets")) {
      check_keys(*o, "simulation.offsets",
                 {"min_khz", "max_khz", "min_rad_s", "max_rad_s", "count"});
      if (auto v = frequency(*o, "simulation.offsets.", "min")) cfg.offsets.lo = *v;
      if (auto v = frequency(*o, "simulation.offsets.", "max")) cfg.offsets.hi = *v;
      if (const json* v = find(*o, "count")) {
        cfg.offsets.count = count(*v, "simulation.offsets.count");
      }
    }
    if (const json* v = find(*s, "epsilon")) {
      if (!v->is_array()) throw ConfigError("simulation.epsilon", "expected an array");
      cfg.epsilons.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        cfg.epsilons.push_back(number((*v)[i], fmt::format("simulation.epsilon[{}]", i)));
      }
    }
    if (const json* v = find(*s, "engine")) {
      try {
        cfg.engine = parse_engine(v->get<std::string>());
      } catch (const std::exception&) {
        throw ConfigError("simulation.engine", "expected factorized_2x2 or full_4x4");
      }
    }
  }

  if (const json* v = find(doc, "baseline")) {
    if (!v->is_string()) throw ConfigError("baseline", "expected a string");
    cfg.baseline = parse_baseline(v->get<std::string>());
  }
  if (const json* c = find(doc, "cw")) {
    check_keys(*c, "cw", {"amplitude_khz", "amplitude_rad_s"});
    cfg.cw_amplitude = frequency(*c, "cw.", "amplitude");
  }
  if (const json* t = find(doc, "tppm")) {
    check_keys(*t, "tppm", {"phase_deg", "flip_deg", "tip_us"});
    if (const json* v = find(*t, "phase_deg")) {
      cfg.tppm_phase = number(*v, "tppm.phase_deg") * kDegree;
    }
    if (const json* v = find(*t, "flip_deg")) {
      cfg.tppm_flip = number(*v, "tppm.flip_deg") * kDegree;
    }
    if (const json* v = find(*t, "tip_us")) cfg.tppm_tip = us_to_s(number(*v, "tppm.tip_us"));
  }
  if (const json* g = find(doc, "gap")) {
    check_keys(*g, "gap", {"threshold_hz", "threshold_rad_s", "list"});
    const json* hz = find(*g, "threshold_hz");
    const json* rad = find(*g, "threshold_rad_s");
    if (hz && rad) throw ConfigError("gap.threshold", "give either _hz or _rad_s, not both");
    if (hz) cfg.gap_threshold = hz_to_rad_s(number(*hz, "gap.threshold_hz"));
    if (rad) cfg.gap_threshold = number(*rad, "gap.threshold_rad_s");
    if (const json* v = find(*g, "list")) {
      if (!v->is_boolean()) throw ConfigError("gap.list", "expected true or false");
      cfg.gap_list = v->get<bool>();
    }
  }
  if (const json* c = find(doc, "compare")) {
    check_keys(*c, "compare", {"max_frames"});
    if (const json* v = find(*c, "max_frames")) {
      cfg.compare_max_frames = count(*v, "compare.max_frames");
    }
  }
  if (const json* o = find(doc, "output")) {
    check_keys(*o, "output", {"dir", "format", "name"});
    if (const json* v = find(*o, "dir")) cfg.out_dir = v->get<std::string>();
    if (const json* v = find(*o, "name")) cfg.name = v->get<std::string>();
    if (const json* v = find(*o, "format")) {
      try {
        cfg.format = parse_shape_format(v->get<std::string>());
      } catch (const std::exception&) {
        throw ConfigError("output.format", "expected csv, json or bruker");
      }
    }
  }
  if (const json* v = find(doc, "threads")) {
    cfg.threads = static_cast<unsigned>(count(*v, "threads"));
  }

  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

void RunConfig::validate() const {
  if (design.w_levels.empty()) throw ConfigError("design.w_levels", "needs at least w_0");
  for (std::size_t k = 0; k < design.w_levels.size(); ++k) {
    if (!(design.w_levels[k] > 0.0) || !std::isfinite(design.w_levels[k])) {
      throw ConfigError(fmt::format("design.w_levels[{}]", k), "must be positive");
    }
  }
  if (!(design.c0 >= 0.0) || !std::isfinite(design.c0)) {
    throw ConfigError("design.c0", "must be non-negative");
  }
  if (!(design.delta_design >= 0.0 && design.delta_design < 1.0)) {
    throw ConfigError("design.delta", "must lie in [0, 1)");
  }
  if (!(j_hz >= 0.0) || !std::isfinite(j_hz)) {
    throw ConfigError("simulation.j_hz", "must be non-negative");
  }
  if (!(dt > 0.0)) throw ConfigError("simulation.dt_us", "must be positive");
  if (!duration && !(j_hz > 0.0)) {
    throw ConfigError("simulation.duration_ms", "required when j_hz is 0");
  }
  if (!(resolved_duration() >= dt)) {
    throw ConfigError("simulation.duration_ms", "must be at least dt");
  }
  const double ratio = record_interval / dt;
  if (!(record_interval >= dt) || std::abs(ratio - std::round(ratio)) > 1e-6) {
    throw ConfigError("simulation.record_us", "must be a whole multiple of dt_us");
  }
  if (offsets.count < 1) throw ConfigError("simulation.offsets.count", "must be >= 1");
  if (epsilons.empty()) throw ConfigError("simulation.epsilon", "needs at least one value");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) {
      throw ConfigError(fmt::format("simulation.epsilon[{}]", i), "must be positive");
    }
  }
  if (cw_amplitude && !(*cw_amplitude > 0.0)) {
    throw ConfigError("cw.amplitude", "must be positive");
  }
  if (tppm_tip && !(*tppm_tip >= dt)) throw ConfigError("tppm.tip_us", "must be at least dt");
  if (!tppm_tip && !(tppm_flip > 0.0)) throw ConfigError("tppm.flip_deg", "must be positive");
  if (!(gap_threshold >= 0.0)) throw ConfigError("gap.threshold", "must be non-negative");
  if (name.empty()) throw ConfigError("output.name", "must not be empty");
}

std::vector<double> RunConfig::offset_grid() const {
  return linear_grid(offsets.lo.value_or(-design.c0), offsets.hi.value_or(design.c0),
                     offsets.count);
}

SimConfig RunConfig::sim_config(double epsilon) const {
  SimConfig sc;
  sc.duration = resolved_duration();
  sc.dt = dt;
  sc.epsilon = epsilon;
  sc.engine = engine;
  sc.record_interval = record_interval;
  return sc;
}

json RunConfig::to_json() const {
  json doc;
  doc["design"] = {{"n_frames", design.n_frames()},
                   {"w_levels_rad_s", design.w_levels},
                   {"c0_rad_s", design.c0},
                   {"delta", design.delta_design}};
  json sim = {{"j_hz", j_hz},
              {"duration_s", resolved_duration()},
              {"dt_us", dt * 1e6},
              {"record_us", record_interval * 1e6},
              {"omega0_rad_s", omega0},
              {"epsilon", epsilons},
              {"engine", std::string(to_string(engine))}};
  const auto grid = offset_grid();
  sim["offsets"] = {{"min_rad_s", grid.front()}, {"max_rad_s", grid.back()},
                    {"count", offsets.count}};
  doc["simulation"] = sim;
  doc["baseline"] = to_string(baseline);
  if (cw_amplitude) doc["cw"] = {{"amplitude_rad_s", *cw_amplitude}};
  doc["tppm"] = {{"phase_deg", tppm_phase / kDegree}, {"flip_deg", tppm_flip / kDegree}};
  if (tppm_tip) doc["tppm"]["tip_us"] = *tppm_tip * 1e6;
  doc["gap"] = {{"threshold_rad_s", gap_threshold}, {"list", gap_list}};
  doc["compare"] = {{"max_frames", compare_max_frames}};
  std::string fmt_name = format == ShapeFormat::bruker_text ? "bruker"
                         : format == ShapeFormat::json      ? "json"
                                                            : "csv";
  doc["output"] = {{"dir", out_dir}, {"format", fmt_name}, {"name", name}};
  doc["threads"] = threads;
  return doc;
}

}  // namespace modedec::app
