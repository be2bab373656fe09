#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modedec/cascade.hpp"
#include "modedec/shape_io.hpp"
#include "modedec/spinsim.hpp"

namespace modedec::app {

/// Raised for malformed or out-of-range configuration. `field()` names the
/// offending key as a dotted path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Baseline { mode, tppm, cw };

struct OffsetGrid {
  std::optional<double> lo;  // rad/s; defaults to -c0
  std::optional<double> hi;  // rad/s; defaults to +c0
  std::size_t count = 41;
};

/// Everything a subcommand needs, in library units (rad/s, s, Hz for J).
/// Unit conversion from the file's kHz / ms / us keys happens once, in
/// `from_json`.
struct RunConfig {
  ModeDesign design = ModeDesign::uniform(6, 0.0, 0.0);

  double j_hz = 140.0;
  std::optional<double> duration;  // s; defaults to 12/J
  double dt = 0.5e-6;
  double record_interval = 10e-6;
  double omega0 = 0.0;  // offset used by `simulate`
  OffsetGrid offsets;
  std::vector<double> epsilons{1.0};
  Engine engine = Engine::factorized_2x2;

  Baseline baseline = Baseline::mode;
  std::optional<double> cw_amplitude;  // rad/s; defaults to the MODE RMS
  double tppm_phase = 0.0;             // rad, full phase step
  double tppm_flip = 0.0;              // rad, per tip; sets the tip length
  std::optional<double> tppm_tip;      // s; overrides tppm_flip

  double gap_threshold = 0.0;  // rad/s
  bool gap_list = false;

  std::size_t compare_max_frames = 0;  // 0 = design's n_frames

  std::string out_dir = ".";
  ShapeFormat format = ShapeFormat::csv;
  std::string name = "mode";
  unsigned threads = 1;

  static RunConfig defaults();
  static RunConfig from_json(const nlohmann::json& doc);
  static RunConfig from_file(const std::string& path);

  /// Canonical, re-loadable form in rad/s and seconds.
  nlohmann::json to_json() const;

  double resolved_duration() const { return duration.value_or(12.0 / j_hz); }
  std::vector<double> offset_grid() const;
  SimConfig sim_config(double epsilon = 1.0) const;

  /// Throws ConfigError on the first broken invariant.
  void validate() const;
};

Baseline parse_baseline(const std::string& name);
std::string to_string(Baseline baseline);

/// "min:max:count" with min/max in kHz.
OffsetGrid parse_offsets_khz(const std::string& spec);
/// Comma-separated list of epsilons.
std::vector<double> parse_epsilon_list(const std::string& spec);

}  // namespace modedec::app
