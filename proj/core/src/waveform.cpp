#include "modedec/waveform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <fmt/format.h>

#include "modedec/errors.hpp"
#include "modedec/units.hpp"

namespace modedec {

AmpPhaseSample to_amp_phase(RfSample s) {
  double phase = std::atan2(s.wy, s.wx);
  if (phase < 0.0) phase += kTwoPi;
  if (phase >= kTwoPi) phase -= kTwoPi;
  return {std::hypot(s.wx, s.wy), phase};
}

RfSample to_cartesian(AmpPhaseSample s) {
  return {s.amplitude * std::cos(s.phase), s.amplitude * std::sin(s.phase)};
}

Waveform::Waveform(double dt, std::vector<RfSample> samples, WaveformMeta meta)
    : dt_(dt), samples_(std::move(samples)), meta_(std::move(meta)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw std::invalid_argument("Waveform: dt must be positive and finite");
  }
  if (samples_.empty()) throw std::invalid_argument("Waveform: no samples");
}

Waveform Waveform::scaled(double factor) const {
  std::vector<RfSample> out(samples_);
  for (auto& s : out) {
    s.wx *= factor;
    s.wy *= factor;
  }
  return Waveform(dt_, std::move(out), meta_);
}

double modulation_field(const ModeDesign& design, const FrameCascade& cascade, double t) {
  double sum = 0.0;
  double envelope = 1.0;  // prod_{j<k} cos(u_j t)
  for (std::size_t k = 1; k <= cascade.n_frames(); ++k) {
    const double phase = cascade.upsilon[k - 1] * t;
    sum += design.w_levels[k] * envelope * std::sin(phase);
    envelope *= std::cos(phase);
  }
  return sum;
}

std::size_t sample_count(double duration, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample_count: dt must be positive");
  if (!(duration >= dt)) {
    throw std::invalid_argument("sample_count: duration must be at least dt");
  }
  return static_cast<std::size_t>(std::llround(duration / dt));
}

std::string design_hash(const ModeDesign& design) {
  // FNV-1a over the IEEE-754 bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (double w : design.w_levels) mix(w);
  mix(design.c0);
  mix(design.delta_design);
  return fmt::format("{:016x}", h);
}

Waveform synthesize_mode(const ModeDesign& design, const FrameCascade& cascade,
                         double duration, double dt) {
  design.validate();
  if (cascade.n_frames() != design.n_frames()) {
    throw std::invalid_argument("synthesize_mode: cascade does not match design");
  }
  const std::size_t n = sample_count(duration, dt);
  if (cascade.n_frames() > 0) {
    const double fastest_period = kTwoPi / cascade.upsilon.front();
    if (dt > fastest_period / 20.0) {
      throw NumericalGuardError(fmt::format(
          "synthesize_mode: dt = {:.3g} s undersamples the fastest modulation "
          "(period {:.3g} s, need dt <= period/20)",
          dt, fastest_period));
    }
  }

  std::vector<RfSample> samples(n);
  const double wx = design.w0();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    samples[i] = {wx, modulation_field(design, cascade, t)};
  }
  return Waveform(dt, std::move(samples),
                  {fmt::format("mode-n{}", design.n_frames()), design_hash(design)});
}

Waveform make_cw(double amplitude, double duration, double dt) {
  const std::size_t n = sample_count(duration, dt);
  return Waveform(dt, std::vector<RfSample>(n, RfSample{amplitude, 0.0}), {"cw", ""});
}

Waveform make_tppm(double amplitude, double tip_duration, double phase_offset,
                   double duration, double dt) {
  if (!(tip_duration >= dt)) {
    throw std::invalid_argument("make_tppm: tip_duration must be at least dt");
  }
  const std::size_t n = sample_count(duration, dt);
  const RfSample plus = to_cartesian({amplitude, phase_offset / 2.0});
  const RfSample minus = to_cartesian({amplitude, -phase_offset / 2.0});

  std::vector<RfSample> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    const auto segment = static_cast<long long>(std::floor(t / tip_duration));
    samples[i] = (segment % 2 == 0) ? plus : minus;
  }
  return Waveform(dt, std::move(samples), {"tppm", ""});
}

double rms_amplitude(const Waveform& waveform) {
  double acc = 0.0;
  for (const auto& s : waveform.samples()) acc += s.wx * s.wx + s.wy * s.wy;
  return std::sqrt(acc / static_cast<double>(waveform.size()));
}

double max_amplitude(const Waveform& waveform) {
  double best = 0.0;
  for (const auto& s : waveform.samples()) best = std::max(best, std::hypot(s.wx, s.wy));
  return best;
}

double analytic_rms(const ModeDesign& design) {
  double acc = design.w0() * design.w0();
  for (std::size_t k = 1; k < design.w_levels.size(); ++k) {
    acc += std::ldexp(design.w_levels[k] * design.w_levels[k], -static_cast<int>(k));
  }
  return std::sqrt(acc);
}

RmsMatch equalize_rms(const std::function<Waveform(double)>& make, double target,
                      double lo, double hi, double rel_tol, int max_steps) {
  if (!(target > 0.0) || !(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("equalize_rms: need target > 0 and 0 < lo < hi");
  }
  for (int step = 1; step <= max_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double rms = rms_amplitude(make(mid));
    if (std::abs(rms - target) <= rel_tol * target) return {mid, rms, step};
    (rms < target ? lo : hi) = mid;
  }
  throw NumericalGuardError(fmt::format(
      "equalize_rms: no scale in bracket reached RMS {:.6g} rad/s within {} bisection steps",
      target, max_steps));
}

}  // namespace modedec
