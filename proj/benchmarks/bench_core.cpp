#include <benchmark/benchmark.h>

#include "modedec/cascade.hpp"
#include "modedec/resonance.hpp"
#include "modedec/spinsim.hpp"
#include "modedec/units.hpp"
#include "modedec/waveform.hpp"

namespace {

using namespace modedec;

ModeDesign design(std::size_t n) {
  return ModeDesign::uniform(n, khz_to_rad_s(4.8), khz_to_rad_s(22.5));
}

void BM_BuildCascade(benchmark::State& state) {
  const auto d = design(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_cascade(d));
}
BENCHMARK(BM_BuildCascade)->Arg(6)->Arg(12);

void BM_MinGap(benchmark::State& state) {
  const auto fc = build_cascade(design(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(min_gap(fc.upsilon, hz_to_rad_s(500.0)));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(lattice_size(fc.n_frames())));
}
BENCHMARK(BM_MinGap)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

void BM_Synthesize(benchmark::State& state) {
  const auto d = design(6);
  const auto fc = build_cascade(d);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_mode(d, fc, 10e-3, 0.5e-6));
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

// One offset, 10 ms at dt = 0.5 us (20000 steps).
void BM_Propagate(benchmark::State& state) {
  const auto d = design(6);
  const auto wf = synthesize_mode(d, build_cascade(d), 10e-3, 0.5e-6);
  SimConfig cfg;
  cfg.duration = 10e-3;
  cfg.dt = 0.5e-6;
  cfg.engine = state.range(0) == 0 ? Engine::factorized_2x2 : Engine::full_4x4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate({140.0, khz_to_rad_s(5.0)}, wf, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
  state.SetLabel(std::string(to_string(cfg.engine)));
}
BENCHMARK(BM_Propagate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
