#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "modedec/waveform.hpp"

namespace modedec {

/// Heteronuclear IS pair. The observed spin S sits on resonance.
struct SpinSystem {
  double j_coupling_hz = 0.0;
  double omega0 = 0.0;  // spin-I offset, rad/s
};

enum class Engine { factorized_2x2, full_4x4 };

Engine parse_engine(std::string_view name);
std::string_view to_string(Engine engine);

struct SimConfig {
  double duration = 0.0;  // s
  double dt = 0.0;        // s, must equal the waveform's dt
  double epsilon = 1.0;   // realized / nominal RF amplitude
  Engine engine = Engine::factorized_2x2;
  double record_interval = 10e-6;  // s, multiple of dt

  /// Acquisition window of 12/J seconds.
  static SimConfig acquisition(double j_coupling_hz, double dt, double epsilon = 1.0);
};

/// S_x(t) normalized so that S_x(0) = 1.
struct SimTrace {
  std::vector<double> times;
  std::vector<double> sx;
};

/// Piecewise-constant propagation under
///   H(t) = omega0 I_z + 2 pi J I_z S_z + eps (wx(t) I_x + wy(t) I_y),
/// one exact exponential per waveform sample.
///
/// factorized_2x2 uses that S_z is conserved: spin I evolves under
/// H_+- = (omega0 +- pi J) I_z + eps (wx I_x + wy I_y) and
/// S_x(t) = Re Tr(U_+ U_-^dagger) / 2. full_4x4 propagates the two-spin
/// unitary from the tensor-product Hamiltonian and serves as an independent
/// check.
SimTrace propagate(const SpinSystem& system, const Waveform& waveform, const SimConfig& config);

/// Trapezoidal (1/T) int_0^T S_x dt over the recorded trace.
double efficiency(const SimTrace& trace);

struct EfficiencyResult {
  double omega0 = 0.0;
  double epsilon = 1.0;
  double eta = 0.0;
};

/// One propagate + efficiency per offset. Results are in grid order no matter
/// how many threads run them.
std::vector<EfficiencyResult> offset_sweep(double j_coupling_hz, const Waveform& waveform,
                                           const SimConfig& config,
                                           std::span<const double> offsets,
                                           unsigned threads = 1);

/// Cartesian product over (epsilon, offset); row r belongs to epsilons[r].
std::vector<std::vector<EfficiencyResult>> inhomogeneity_sweep(
    double j_coupling_hz, const Waveform& waveform, const SimConfig& config,
    std::span<const double> epsilons, std::span<const double> offsets, unsigned threads = 1);

/// `count` points evenly spanning [lo, hi] (endpoints included).
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace modedec
