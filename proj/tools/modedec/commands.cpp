#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "modedec/resonance.hpp"
#include "modedec/shape_io.hpp"
#include "modedec/units.hpp"

namespace modedec::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_text(const RunConfig& cfg, const std::string& file, const std::string& text) {
  fs::create_directories(cfg.out_dir);
  const fs::path path = fs::path(cfg.out_dir) / file;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_json(const RunConfig& cfg, const std::string& file, const json& doc) {
  write_text(cfg, file, doc.dump(2) + "\n");
}

double mode_rms(const RunConfig& cfg) {
  const auto wf = synthesize_mode(cfg.design, build_cascade(cfg.design),
                                  cfg.resolved_duration(), cfg.dt);
  return rms_amplitude(wf);
}

Waveform tppm_waveform(const RunConfig& cfg, double amplitude) {
  const double tip = cfg.tppm_tip.value_or(cfg.tppm_flip / amplitude);
  return make_tppm(amplitude, tip, cfg.tppm_phase, cfg.resolved_duration(), cfg.dt);
}

SequenceScore score(std::string name, double amplitude, const Waveform& wf,
                    const RunConfig& cfg) {
  SequenceScore s;
  s.name = std::move(name);
  s.amplitude = amplitude;
  s.rms = rms_amplitude(wf);
  const auto grid = cfg.offset_grid();
  s.profile = offset_sweep(cfg.j_hz, wf, cfg.sim_config(cfg.epsilons.front()), grid, cfg.threads);
  s.worst_eta = s.profile.front().eta;
  double sum = 0.0;
  for (const auto& r : s.profile) {
    s.worst_eta = std::min(s.worst_eta, r.eta);
    sum += r.eta;
  }
  s.mean_eta = sum / static_cast<double>(s.profile.size());
  return s;
}

json cascade_table(const FrameCascade& fc) {
  json frames = json::array();
  for (std::size_t k = 0; k < fc.wbar.size(); ++k) {
    json row = {{"k", k},
                {"wbar_khz", rad_s_to_khz(fc.wbar[k])},
                {"c_khz", rad_s_to_khz(fc.c[k])},
                {"alpha", fc.alpha[k]}};
    row["upsilon_khz"] = k == 0 ? json(nullptr) : json(rad_s_to_khz(fc.upsilon[k - 1]));
    frames.push_back(row);
  }
  return frames;
}

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

// Output location and thread count do not affect results, so reports leave
// them out and stay byte-identical across runs.
json report_config(const RunConfig& cfg) {
  json doc = cfg.to_json();
  doc["output"].erase("dir");
  doc.erase("threads");
  return doc;
}

}  // namespace

json design_report(const RunConfig& cfg) {
  const auto fc = build_cascade(cfg.design);
  json report;
  report["config"] = report_config(cfg);
  report["n_frames"] = fc.n_frames();
  report["frames"] = cascade_table(fc);
  if (cfg.design.delta_design > 0.0) {
    report["alpha_fixed_point"] = alpha_fixed_point(cfg.design.delta_design);
  }
  return report;
}

Waveform build_waveform(const RunConfig& cfg, Baseline baseline) {
  switch (baseline) {
    case Baseline::mode:
      return synthesize_mode(cfg.design, build_cascade(cfg.design), cfg.resolved_duration(),
                             cfg.dt);
    case Baseline::cw:
      return make_cw(cfg.cw_amplitude.value_or(mode_rms(cfg)), cfg.resolved_duration(), cfg.dt);
    case Baseline::tppm:
      return tppm_waveform(cfg, cfg.cw_amplitude.value_or(mode_rms(cfg)));
  }
  throw std::invalid_argument("unknown baseline");
}

std::vector<SequenceScore> compare_sequences(const RunConfig& cfg) {
  const double duration = cfg.resolved_duration();
  const std::size_t n_max = cfg.compare_max_frames ? cfg.compare_max_frames
                                                   : cfg.design.n_frames();
  const auto reference = build_waveform(cfg, Baseline::mode);
  const double target = rms_amplitude(reference);

  auto ladder = [&](std::size_t n, double scale) {
    ModeDesign d = cfg.design;
    // Ladders longer than the configured design repeat its last level.
    d.w_levels.resize(n + 1, cfg.design.w_levels.back());
    for (auto& w : d.w_levels) w *= scale;
    return d;
  };

  std::vector<SequenceScore> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto name = fmt::format("mode-n{}", n);
    if (n == cfg.design.n_frames()) {
      rows.push_back(score(name, cfg.design.w0(), reference, cfg));
      continue;
    }
    auto make = [&](double scale) {
      const auto d = ladder(n, scale);
      return synthesize_mode(d, build_cascade(d), duration, cfg.dt);
    };
    const auto match = equalize_rms(make, target, 0.25, 4.0);
    rows.push_back(score(name, ladder(n, match.scale).w0(), make(match.scale), cfg));
  }

  const double lo = 0.25 * target;
  const double hi = 4.0 * target;
  const auto tppm = equalize_rms([&](double a) { return tppm_waveform(cfg, a); }, target, lo, hi);
  rows.push_back(score("tppm", tppm.scale, tppm_waveform(cfg, tppm.scale), cfg));
  const auto cw = equalize_rms([&](double a) { return make_cw(a, duration, cfg.dt); }, target,
                               lo, hi);
  rows.push_back(score("cw", cw.scale, make_cw(cw.scale, duration, cfg.dt), cfg));

  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.worst_eta != b.worst_eta) return a.worst_eta > b.worst_eta;
    return a.name < b.name;
  });
  return rows;
}

json cmd_design(const RunConfig& cfg, std::ostream& log) {
  const json report = design_report(cfg);
  write_json(cfg, "design.json", report);

  fmt::print(log, "MODE cascade, N = {}, c0 = {:.4f} kHz, delta = {}\n",
             cfg.design.n_frames(), rad_s_to_khz(cfg.design.c0), cfg.design.delta_design);
  fmt::print(log, "{:>3}  {:>12}  {:>12}  {:>12}  {:>10}\n", "k", "wbar [kHz]", "c [kHz]",
             "u [kHz]", "alpha");
  for (const auto& row : report["frames"]) {
    const std::string ups = row["upsilon_khz"].is_null()
                                ? std::string("-")
                                : fmt::format("{:.6f}", row["upsilon_khz"].get<double>());
    fmt::print(log, "{:>3}  {:>12.6f}  {:>12.6f}  {:>12}  {:>10.6f}\n", row["k"].get<int>(),
               row["wbar_khz"].get<double>(), row["c_khz"].get<double>(), ups,
               row["alpha"].get<double>());
  }
  if (report.contains("alpha_fixed_point")) {
    fmt::print(log, "alpha fixed point: {:.6f}\n", report["alpha_fixed_point"].get<double>());
  }
  return report;
}

json cmd_synth(const RunConfig& cfg, std::ostream& log) {
  const auto wf = build_waveform(cfg, cfg.baseline);
  const std::string shape_file = cfg.name + std::string(file_extension(cfg.format));
  write_text(cfg, shape_file, export_shape(wf, cfg.format, cfg.name));

  std::string amp_phase = "t_s,amp_khz,phase_deg\n";
  for (std::size_t i = 0; i < wf.size(); ++i) {
    const auto ap = to_amp_phase(wf[i]);
    amp_phase += fmt::format("{},{},{}\n", csv_number(wf.time_at(i)),
                             csv_number(rad_s_to_khz(ap.amplitude)),
                             csv_number(ap.phase * 180.0 / std::numbers::pi));
  }
  write_text(cfg, cfg.name + "_amp_phase.csv", amp_phase);

  json report;
  report["config"] = report_config(cfg);
  report["generator"] = wf.meta().generator;
  report["design_hash"] = wf.meta().design_hash;
  report["samples"] = wf.size();
  report["dt_s"] = wf.dt();
  report["duration_s"] = wf.duration();
  report["rms_khz"] = rad_s_to_khz(rms_amplitude(wf));
  report["max_khz"] = rad_s_to_khz(max_amplitude(wf));
  if (cfg.baseline == Baseline::mode) {
    report["closed_form_rms_khz"] = rad_s_to_khz(analytic_rms(cfg.design));
  }
  report["files"] = {shape_file, cfg.name + "_amp_phase.csv"};
  write_json(cfg, "synth.json", report);

  fmt::print(log, "{}: {} samples, dt = {:.3g} us, duration = {:.6g} ms\n",
             wf.meta().generator, wf.size(), wf.dt() * 1e6, wf.duration() * 1e3);
  fmt::print(log, "rms amplitude {:.4f} kHz, max amplitude {:.4f} kHz\n",
             report["rms_khz"].get<double>(), report["max_khz"].get<double>());
  if (report.contains("closed_form_rms_khz")) {
    fmt::print(log, "closed-form rms sqrt(w0^2 + sum 2^-k w_k^2) = {:.4f} kHz\n",
               report["closed_form_rms_khz"].get<double>());
  }
  return report;
}

json cmd_gap(const RunConfig& cfg, std::ostream& log) {
  const auto fc = build_cascade(cfg.design);
  if (fc.n_frames() == 0) throw ConfigError("design.n_frames", "gap search needs N >= 1");
  const auto result = min_gap(fc.upsilon, cfg.gap_threshold);

  auto assignment_json = [&](const GapAssignment& g) {
    return json{{"k", g.k},
                {"c", g.c},
                {"a", g.a},
                {"d", g.d},
                {"delta_hz", rad_s_to_hz(lattice_offset(g, fc.upsilon))}};
  };

  json report;
  report["config"] = report_config(cfg);
  json ups = json::array();
  for (double u : fc.upsilon) ups.push_back(rad_s_to_khz(u));
  report["upsilon_khz"] = ups;
  report["lattice_size"] = lattice_size(fc.n_frames());
  report["delta_min_hz"] = rad_s_to_hz(result.delta_min);
  report["delta_min_rad_s"] = result.delta_min;
  report["assignment"] = assignment_json(result.assignment);
  report["threshold_hz"] = rad_s_to_hz(cfg.gap_threshold);
  report["near_resonances"] = result.near_resonances;
  if (cfg.gap_list) {
    json list = json::array();
    for (const auto& g : gap_report(fc.upsilon, cfg.gap_threshold)) {
      list.push_back(assignment_json(g));
    }
    report["near_list"] = list;
  }
  write_json(cfg, "gap.json", report);

  const auto& g = result.assignment;
  fmt::print(log, "minimum resonance gap |Delta| = {:.4f} Hz over {} lattice points\n",
             rad_s_to_hz(result.delta_min), lattice_size(fc.n_frames()));
  fmt::print(log, "  at k = {}, c = [{}], a = {}, d = [{}]\n", g.k, fmt::join(g.c, ", "), g.a,
             fmt::join(g.d, ", "));
  fmt::print(log, "{} lattice points with |Delta| < {:.4g} Hz\n", result.near_resonances,
             rad_s_to_hz(cfg.gap_threshold));
  return report;
}

json cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  const auto wf = build_waveform(cfg, cfg.baseline);
  const double eps = cfg.epsilons.front();
  const auto trace = propagate({cfg.j_hz, cfg.omega0}, wf, cfg.sim_config(eps));
  const double eta = efficiency(trace);

  std::string csv = "t_s,sx\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    csv += fmt::format("{},{}\n", csv_number(trace.times[i]), csv_number(trace.sx[i]));
  }
  write_text(cfg, "trace.csv", csv);

  json report;
  report["config"] = report_config(cfg);
  report["sequence"] = wf.meta().generator;
  report["omega0_khz"] = rad_s_to_khz(cfg.omega0);
  report["epsilon"] = eps;
  report["eta"] = eta;
  report["points"] = trace.times.size();
  write_json(cfg, "simulate.json", report);

  fmt::print(log, "{} at omega0 = {:.4f} kHz, epsilon = {}: eta = {:.6f} ({} trace points)\n",
             wf.meta().generator, rad_s_to_khz(cfg.omega0), eps, eta, trace.times.size());
  return report;
}

json cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  const auto wf = build_waveform(cfg, cfg.baseline);
  const auto grid = cfg.offset_grid();
  const auto table =
      inhomogeneity_sweep(cfg.j_hz, wf, cfg.sim_config(), cfg.epsilons, grid, cfg.threads);

  std::string csv = "omega0_rad_s,omega0_khz,epsilon,eta\n";
  json summary = json::array();
  for (const auto& row : table) {
    double worst = row.front().eta;
    double sum = 0.0;
    for (const auto& r : row) {
      csv += fmt::format("{},{},{},{}\n", csv_number(r.omega0),
                         csv_number(rad_s_to_khz(r.omega0)), csv_number(r.epsilon),
                         csv_number(r.eta));
      worst = std::min(worst, r.eta);
      sum += r.eta;
    }
    const double mean = sum / static_cast<double>(row.size());
    summary.push_back({{"epsilon", row.front().epsilon}, {"worst_eta", worst}, {"mean_eta", mean}});
    fmt::print(log, "epsilon = {:<5} worst eta = {:+.4f}  mean eta = {:+.4f}\n",
               row.front().epsilon, worst, mean);
  }
  write_text(cfg, "sweep.csv", csv);

  json report;
  report["config"] = report_config(cfg);
  report["sequence"] = wf.meta().generator;
  report["summary"] = summary;
  write_json(cfg, "sweep.json", report);
  return report;
}

json cmd_compare(const RunConfig& cfg, std::ostream& log) {
  const auto rows = compare_sequences(cfg);

  std::string table = "sequence,amplitude_khz,rms_khz,worst_eta,mean_eta\n";
  std::string profile = "sequence,omega0_khz,eta\n";
  json list = json::array();
  fmt::print(log, "{:<10} {:>14} {:>10} {:>10} {:>10}\n", "sequence", "amplitude[kHz]",
             "rms[kHz]", "worst eta", "mean eta");
  for (const auto& r : rows) {
    table += fmt::format("{},{},{},{},{}\n", r.name, csv_number(rad_s_to_khz(r.amplitude)),
                         csv_number(rad_s_to_khz(r.rms)), csv_number(r.worst_eta),
                         csv_number(r.mean_eta));
    for (const auto& p : r.profile) {
      profile += fmt::format("{},{},{}\n", r.name, csv_number(rad_s_to_khz(p.omega0)),
                             csv_number(p.eta));
    }
    list.push_back({{"sequence", r.name},
                    {"amplitude_khz", rad_s_to_khz(r.amplitude)},
                    {"rms_khz", rad_s_to_khz(r.rms)},
                    {"worst_eta", r.worst_eta},
                    {"mean_eta", r.mean_eta}});
    fmt::print(log, "{:<10} {:>14.4f} {:>10.4f} {:>+10.4f} {:>+10.4f}\n", r.name,
               rad_s_to_khz(r.amplitude), rad_s_to_khz(r.rms), r.worst_eta, r.mean_eta);
  }
  write_text(cfg, "compare.csv", table);
  write_text(cfg, "compare_profile.csv", profile);

  json report;
  report["config"] = report_config(cfg);
  report["sequences"] = list;
  write_json(cfg, "compare.json", report);
  return report;
}

}  // namespace modedec::app
