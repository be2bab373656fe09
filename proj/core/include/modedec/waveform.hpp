#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "modedec/cascade.hpp"

namespace modedec {

/// RF field on spin I for one time slice, rad/s.
struct RfSample {
  double wx = 0.0;
  double wy = 0.0;

  friend bool operator==(const RfSample&, const RfSample&) = default;
};

struct AmpPhaseSample {
  double amplitude = 0.0;  // rad/s, >= 0
  double phase = 0.0;      // rad, [0, 2pi)
};

AmpPhaseSample to_amp_phase(RfSample s);
RfSample to_cartesian(AmpPhaseSample s);

struct WaveformMeta {
  std::string generator;
  std::string design_hash;
};

/// Uniformly sampled RF field. Sample i holds the field on the slice
/// [i dt, (i+1) dt), evaluated at the slice midpoint.
class Waveform {
 public:
  Waveform(double dt, std::vector<RfSample> samples, WaveformMeta meta = {});

  double dt() const { return dt_; }
  std::size_t size() const { return samples_.size(); }
  double duration() const { return dt_ * static_cast<double>(samples_.size()); }
  std::span<const RfSample> samples() const { return samples_; }
  const RfSample& operator[](std::size_t i) const { return samples_[i]; }
  const WaveformMeta& meta() const { return meta_; }

  /// Midpoint time of slice i.
  double time_at(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dt_; }

  /// Copy with every component multiplied by `factor`.
  Waveform scaled(double factor) const;

 private:
  double dt_;
  std::vector<RfSample> samples_;
  WaveformMeta meta_;
};

/// y-component A_0(t) of the multiply-modulated field at time t.
double modulation_field(const ModeDesign& design, const FrameCascade& cascade, double t);

/// Number of samples a waveform of `duration` at spacing `dt` gets.
std::size_t sample_count(double duration, double dt);

/// Short stable fingerprint of a design, used for waveform provenance.
std::string design_hash(const ModeDesign& design);

/// Samples the MODE field at slice midpoints. Throws NumericalGuardError when
/// dt exceeds 1/20 of the fastest modulation period.
Waveform synthesize_mode(const ModeDesign& design, const FrameCascade& cascade,
                         double duration, double dt);

Waveform make_cw(double amplitude, double duration, double dt);

/// Constant amplitude, phase alternating between +phase_offset/2 and
/// -phase_offset/2 every tip_duration.
Waveform make_tppm(double amplitude, double tip_duration, double phase_offset,
                   double duration, double dt);

double rms_amplitude(const Waveform& waveform);
double max_amplitude(const Waveform& waveform);

/// Time-averaged RMS of an equal-in-time modulation ladder:
/// sqrt(w_0^2 + sum_{k>=1} 2^-k w_k^2).
double analytic_rms(const ModeDesign& design);

/// Finds a scale s in [lo, hi] such that rms_amplitude(make(s)) is within
/// `rel_tol` of `target`, by bisection. rms(make(s)) must be increasing in s.
/// Throws NumericalGuardError after `max_steps` bisections without success.
struct RmsMatch {
  double scale = 0.0;
  double rms = 0.0;
  int steps = 0;
};
RmsMatch equalize_rms(const std::function<Waveform(double)>& make, double target,
                      double lo, double hi, double rel_tol = 1e-6, int max_steps = 50);

}  // namespace modedec
