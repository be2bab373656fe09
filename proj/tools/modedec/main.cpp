#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "commands.hpp"
#include "modedec/errors.hpp"
#include "modedec/units.hpp"
#include "run_config.hpp"

namespace {

using modedec::app::ConfigError;
using modedec::app::RunConfig;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<std::string> baseline;
  std::optional<unsigned> threads;
  std::optional<double> dt_us;
  std::optional<double> duration_ms;
  std::optional<std::string> epsilons;
  std::optional<std::string> offsets;
  bool print_config = false;
};

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig::defaults()
                                        : RunConfig::from_file(o.config_path);
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.format) {
    try {
      cfg.format = modedec::parse_shape_format(*o.format);
    } catch (const std::invalid_argument&) {
      throw ConfigError("--format", "expected csv, json or bruker");
    }
  }
  if (o.baseline) cfg.baseline = modedec::app::parse_baseline(*o.baseline);
  if (o.threads) cfg.threads = *o.threads;
  if (o.dt_us) cfg.dt = modedec::us_to_s(*o.dt_us);
  if (o.duration_ms) cfg.duration = modedec::ms_to_s(*o.duration_ms);
  if (o.epsilons) cfg.epsilons = modedec::app::parse_epsilon_list(*o.epsilons);
  if (o.offsets) cfg.offsets = modedec::app::parse_offsets_khz(*o.offsets);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MODE decoupling design, synthesis and spin simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--format", o.format, "Shape file format: csv, json or bruker");
  app.add_option("--baseline", o.baseline, "Sequence for synth/simulate/sweep: mode, tppm, cw");
  app.add_option("--threads", o.threads, "Worker threads for sweeps (0 = all cores)");
  app.add_option("--dt-us", o.dt_us, "Time step in microseconds");
  app.add_option("--duration-ms", o.duration_ms, "Simulation window in milliseconds");
  app.add_option("--epsilon", o.epsilons, "Comma-separated RF scale factors");
  app.add_option("--offsets", o.offsets, "Offset grid as min:max:count in kHz");
  app.add_flag("--print-config", o.print_config, "Print the resolved configuration and exit");

  using Command = nlohmann::json (*)(const RunConfig&, std::ostream&);
  const std::pair<const char*, Command> commands[] = {
      {"design", modedec::app::cmd_design},     {"synth", modedec::app::cmd_synth},
      {"gap", modedec::app::cmd_gap},           {"simulate", modedec::app::cmd_simulate},
      {"sweep", modedec::app::cmd_sweep},       {"compare", modedec::app::cmd_compare},
  };
  const char* help[] = {
      "Print the frame cascade for the design",
      "Write the waveform as a shape file",
      "Search the resonance lattice for the smallest gap",
      "Propagate one offset and report the decoupling efficiency",
      "Efficiency over the offset grid for each RF scale factor",
      "Rank MODE N=1..N, TPPM and CW at equal RMS power",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    app.add_subcommand(commands[i].first, help[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = resolve(o);
    if (o.print_config) {
      std::cout << cfg.to_json().dump(2) << "\n";
      return 0;
    }
    for (const auto& [name, run] : commands) {
      if (app.got_subcommand(name)) run(cfg, std::cout);
    }
    return 0;
  } catch (const ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return 2;
  } catch (const modedec::NumericalGuardError& e) {
    fmt::print(std::cerr, "numerical guard: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 1;
  }
}
