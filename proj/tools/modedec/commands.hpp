#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "modedec/spinsim.hpp"
#include "modedec/waveform.hpp"
#include "run_config.hpp"

namespace modedec::app {

/// Cascade table in kHz plus the alpha fixed point when delta > 0.
nlohmann::json design_report(const RunConfig& cfg);

/// The waveform the config selects (MODE, TPPM or CW) over the full
/// simulation window. CW and TPPM default to the MODE design's RMS amplitude.
Waveform build_waveform(const RunConfig& cfg, Baseline baseline);

struct SequenceScore {
  std::string name;
  double amplitude = 0.0;  // w_0 for MODE, field amplitude otherwise (rad/s)
  double rms = 0.0;        // rad/s
  double worst_eta = 0.0;
  double mean_eta = 0.0;
  std::vector<EfficiencyResult> profile;
};

/// MODE N=1..N_max, TPPM and CW at the RMS power of the configured MODE
/// design, each swept over the offset grid at the first epsilon. Sorted by
/// worst-case eta, best first.
std::vector<SequenceScore> compare_sequences(const RunConfig& cfg);

// Subcommands. Each writes its files under cfg.out_dir, prints a short human
// summary to `log` and returns the JSON report it wrote.
nlohmann::json cmd_design(const RunConfig& cfg, std::ostream& log);
nlohmann::json cmd_synth(const RunConfig& cfg, std::ostream& log);
nlohmann::json cmd_gap(const RunConfig& cfg, std::ostream& log);
nlohmann::json cmd_simulate(const RunConfig& cfg, std::ostream& log);
nlohmann::json cmd_sweep(const RunConfig& cfg, std::ostream& log);
nlohmann::json cmd_compare(const RunConfig& cfg, std::ostream& log);

}  // namespace modedec::app
