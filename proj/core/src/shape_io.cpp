#include "modedec/shape_io.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

namespace modedec {

namespace {

constexpr std::string_view kCsvHeader = "t_s,wx_rad_s,wy_rad_s,amp_rad_s,phase_rad";

// Degrees in [0, 360) after rounding to six decimals, so the printed value
// never reads 360.000000.
double display_degrees(double phase_rad) {
  double deg = phase_rad * 180.0 / std::numbers::pi;
  deg = std::round(deg * 1e6) / 1e6;
  if (deg >= 360.0) deg -= 360.0;
  if (deg < 0.0) deg += 360.0;
  return deg;
}

void write_bruker(const Waveform& w, std::ostream& out, std::string_view title) {
  const double peak = max_amplitude(w);
  if (!(peak > 0.0)) {
    throw std::invalid_argument("export_shape: cannot normalize an all-zero waveform");
  }
  out << fmt::format("##TITLE= {}\n##NPOINTS= {}\n##XYPOINTS= (XY..XY)\n", title, w.size());
  for (const auto& s : w.samples()) {
    const auto ap = to_amp_phase(s);
    out << fmt::format("{:.6f}, {:.6f}\n", 100.0 * ap.amplitude / peak,
                       display_degrees(ap.phase));
  }
  out << "##END=\n";
}

void write_csv(const Waveform& w, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto ap = to_amp_phase(w[i]);
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", w.time_at(i), w[i].wx,
                       w[i].wy, ap.amplitude, ap.phase);
  }
}

void write_json(const Waveform& w, std::ostream& out) {
  nlohmann::json doc;
  doc["dt"] = w.dt();
  doc["duration"] = w.duration();
  doc["generator"] = w.meta().generator;
  if (!w.meta().design_hash.empty()) doc["design_hash"] = w.meta().design_hash;
  auto& samples = doc["samples"] = nlohmann::json::array();
  for (const auto& s : w.samples()) samples.push_back({s.wx, s.wy});
  out << doc.dump() << '\n';
}

}  // namespace

ShapeFormat parse_shape_format(std::string_view name) {
  if (name == "bruker" || name == "bruker_text") return ShapeFormat::bruker_text;
  if (name == "csv") return ShapeFormat::csv;
  if (name == "json") return ShapeFormat::json;
  throw std::invalid_argument(fmt::format("unknown shape format '{}'", name));
}

std::string_view file_extension(ShapeFormat format) {
  switch (format) {
    case ShapeFormat::bruker_text: return ".shape";
    case ShapeFormat::csv: return ".csv";
    case ShapeFormat::json: return ".json";
  }
  return "";
}

void export_shape(const Waveform& waveform, ShapeFormat format, std::ostream& out,
                  std::string_view title) {
  switch (format) {
    case ShapeFormat::bruker_text: write_bruker(waveform, out, title); break;
    case ShapeFormat::csv: write_csv(waveform, out); break;
    case ShapeFormat::json: write_json(waveform, out); break;
  }
  if (!out) throw std::runtime_error("export_shape: write failed");
}

std::string export_shape(const Waveform& waveform, ShapeFormat format,
                         std::string_view title) {
  std::ostringstream os;
  export_shape(waveform, format, os, title);
  return os.str();
}

Waveform import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("import_csv: missing or unexpected header");
  }
  std::vector<double> times;
  std::vector<RfSample> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double values[3];
    for (double& v : values) {
      if (!std::getline(row, field, ',')) {
        throw std::runtime_error("import_csv: short row '" + line + "'");
      }
      v = std::stod(field);
    }
    times.push_back(values[0]);
    samples.push_back({values[1], values[2]});
  }
  if (samples.empty()) throw std::runtime_error("import_csv: no samples");
  // Rows carry slice midpoints: t_0 = dt/2.
  const double dt = times.size() > 1
                        ? (times.back() - times.front()) / static_cast<double>(times.size() - 1)
                        : 2.0 * times.front();
  return Waveform(dt, std::move(samples), {"csv-import", ""});
}

Waveform import_json(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  std::vector<RfSample> samples;
  samples.reserve(doc.at("samples").size());
  for (const auto& s : doc.at("samples")) {
    samples.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
  }
  WaveformMeta meta{doc.value("generator", std::string{}), doc.value("design_hash", std::string{})};
  return Waveform(doc.at("dt").get<double>(), std::move(samples), std::move(meta));
}

}  // namespace modedec
