#include "modedec/spinsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <fmt/format.h>

#include "modedec/su2.hpp"
#include "modedec/units.hpp"

namespace modedec {

namespace {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using cplx = std::complex<double>;

struct StepPlan {
  std::size_t steps = 0;
  std::size_t stride = 1;
};

StepPlan plan_steps(const Waveform& waveform, const SimConfig& config) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("propagate: dt must be positive");
  if (std::abs(waveform.dt() - config.dt) > 1e-9 * config.dt) {
    throw std::invalid_argument(fmt::format(
        "propagate: config dt {:.6g} s does not match waveform dt {:.6g} s", config.dt,
        waveform.dt()));
  }
  if (!(config.duration >= config.dt)) {
    throw std::invalid_argument("propagate: duration must be at least dt");
  }
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("propagate: epsilon must be positive");

  StepPlan plan;
  plan.steps = static_cast<std::size_t>(std::llround(config.duration / config.dt));
  if (plan.steps > waveform.size()) {
    throw std::invalid_argument(fmt::format(
        "propagate: duration needs {} samples but the waveform has {}", plan.steps,
        waveform.size()));
  }
  const double ratio = config.record_interval / config.dt;
  const auto stride = std::llround(ratio);
  if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-6) {
    throw std::invalid_argument("propagate: record_interval must be a whole multiple of dt");
  }
  plan.stride = static_cast<std::size_t>(stride);
  return plan;
}

// Calls record(step) after every `stride` steps and after the last one.
template <typename Step, typename Record>
SimTrace run(const StepPlan& plan, double dt, Step&& step, Record&& record) {
  SimTrace trace;
  const std::size_t points = plan.steps / plan.stride + 2;
  trace.times.reserve(points);
  trace.sx.reserve(points);
  trace.times.push_back(0.0);
  trace.sx.push_back(1.0);
  for (std::size_t i = 0; i < plan.steps; ++i) {
    step(i);
    const std::size_t done = i + 1;
    if (done % plan.stride == 0 || done == plan.steps) {
      trace.times.push_back(static_cast<double>(done) * dt);
      trace.sx.push_back(record());
    }
  }
  return trace;
}

SimTrace propagate_factorized(const SpinSystem& sys, const Waveform& wf, const SimConfig& cfg,
                              const StepPlan& plan) {
  const double half_j = std::numbers::pi * sys.j_coupling_hz;
  const double hz_up = sys.omega0 + half_j;
  const double hz_down = sys.omega0 - half_j;
  const double eps = cfg.epsilon;
  const double dt = cfg.dt;

  Su2 up;
  Su2 down;
  return run(
      plan, dt,
      [&](std::size_t i) {
        const double hx = eps * wf[i].wx;
        const double hy = eps * wf[i].wy;
        up = Su2::rotation(hx, hy, hz_up, dt) * up;
        down = Su2::rotation(hx, hy, hz_down, dt) * down;
      },
      [&] { return half_trace_overlap(up, down); });
}

SimTrace propagate_full(const SpinSystem& sys, const Waveform& wf, const SimConfig& cfg,
                        const StepPlan& plan) {
  const cplx i1(0.0, 1.0);
  Mat2 sx, sy, sz, id;
  sx << 0.0, 0.5, 0.5, 0.0;
  sy << 0.0, -0.5 * i1, 0.5 * i1, 0.0;
  sz << 0.5, 0.0, 0.0, -0.5;
  id.setIdentity();

  // Spin I is the first tensor factor, spin S the second.
  const Mat4 ix = Eigen::kroneckerProduct(sx, id);
  const Mat4 iy = Eigen::kroneckerProduct(sy, id);
  const Mat4 iz = Eigen::kroneckerProduct(sz, id);
  const Mat4 sx_obs = Eigen::kroneckerProduct(id, sx);
  const Mat4 izsz = Eigen::kroneckerProduct(sz, sz);

  const Mat4 static_part = sys.omega0 * iz + kTwoPi * sys.j_coupling_hz * izsz;
  const double norm = (sx_obs * sx_obs).trace().real();
  const double dt = cfg.dt;
  const double eps = cfg.epsilon;

  Mat4 u = Mat4::Identity();
  return run(
      plan, dt,
      [&](std::size_t i) {
        const Mat4 h = static_part + eps * wf[i].wx * ix + eps * wf[i].wy * iy;
        const Mat4 step = (-i1 * dt * h).exp();
        u = step * u;
      },
      [&] {
        const Mat4 rho = u * sx_obs * u.adjoint();
        return (rho * sx_obs).trace().real() / norm;
      });
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Engine parse_engine(std::string_view name) {
  if (name == "factorized_2x2") return Engine::factorized_2x2;
  if (name == "full_4x4") return Engine::full_4x4;
  throw std::invalid_argument(fmt::format("unknown engine '{}'", name));
}

std::string_view to_string(Engine engine) {
  return engine == Engine::full_4x4 ? "full_4x4" : "factorized_2x2";
}

SimConfig SimConfig::acquisition(double j_coupling_hz, double dt, double epsilon) {
  SimConfig cfg;
  cfg.duration = 12.0 / j_coupling_hz;
  cfg.dt = dt;
  cfg.epsilon = epsilon;
  return cfg;
}

SimTrace propagate(const SpinSystem& system, const Waveform& waveform, const SimConfig& config) {
  const StepPlan plan = plan_steps(waveform, config);
  switch (config.engine) {
    case Engine::factorized_2x2: return propagate_factorized(system, waveform, config, plan);
    case Engine::full_4x4: return propagate_full(system, waveform, config, plan);
  }
  throw std::invalid_argument("propagate: unknown engine");
}

double efficiency(const SimTrace& trace) {
  if (trace.times.empty() || trace.times.size() != trace.sx.size()) {
    throw std::invalid_argument("efficiency: empty or inconsistent trace");
  }
  if (trace.times.size() == 1) return trace.sx.front();
  double area = 0.0;
  for (std::size_t i = 1; i < trace.times.size(); ++i) {
    area += 0.5 * (trace.sx[i] + trace.sx[i - 1]) * (trace.times[i] - trace.times[i - 1]);
  }
  return area / (trace.times.back() - trace.times.front());
}

std::vector<EfficiencyResult> offset_sweep(double j_coupling_hz, const Waveform& waveform,
                                           const SimConfig& config,
                                           std::span<const double> offsets, unsigned threads) {
  std::vector<EfficiencyResult> out(offsets.size());
  parallel_for(offsets.size(), threads, [&](std::size_t i) {
    const SpinSystem system{j_coupling_hz, offsets[i]};
    out[i] = {offsets[i], config.epsilon, efficiency(propagate(system, waveform, config))};
  });
  return out;
}

std::vector<std::vector<EfficiencyResult>> inhomogeneity_sweep(
    double j_coupling_hz, const Waveform& waveform, const SimConfig& config,
    std::span<const double> epsilons, std::span<const double> offsets, unsigned threads) {
  const std::size_t cols = offsets.size();
  std::vector<std::vector<EfficiencyResult>> table(epsilons.size(),
                                                   std::vector<EfficiencyResult>(cols));
  parallel_for(epsilons.size() * cols, threads, [&](std::size_t flat) {
    const std::size_t r = flat / cols;
    const std::size_t c = flat % cols;
    SimConfig cfg = config;
    cfg.epsilon = epsilons[r];
    const SpinSystem system{j_coupling_hz, offsets[c]};
    table[r][c] = {offsets[c], epsilons[r], efficiency(propagate(system, waveform, cfg))};
  });
  return table;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("linear_grid: count must be positive");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double span = hi - lo;
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + span * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = hi;
  return grid;
}

}  // namespace modedec
