#include "modedec/cascade.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace modedec {

ModeDesign ModeDesign::uniform(std::size_t n_frames, double w0, double c0,
                               double delta_design) {
  ModeDesign design;
  design.w_levels.assign(n_frames + 1, w0);
  design.c0 = c0;
  design.delta_design = delta_design;
  return design;
}

void ModeDesign::validate() const {
  if (w_levels.empty()) {
    throw std::invalid_argument("ModeDesign: w_levels must hold at least w_0");
  }
  for (std::size_t k = 0; k < w_levels.size(); ++k) {
    if (!(w_levels[k] > 0.0) || !std::isfinite(w_levels[k])) {
      throw std::invalid_argument("ModeDesign: w_levels[" + std::to_string(k) +
                                  "] must be positive and finite");
    }
  }
  if (!(c0 >= 0.0) || !std::isfinite(c0)) {
    throw std::invalid_argument("ModeDesign: c0 must be non-negative and finite");
  }
  if (!(delta_design >= 0.0 && delta_design < 1.0)) {
    throw std::invalid_argument("ModeDesign: delta_design must lie in [0, 1)");
  }
}

FrameCascade build_cascade(const ModeDesign& design) {
  design.validate();

  const std::size_t n = design.n_frames();
  const double d = design.delta_design;

  FrameCascade out;
  out.delta_design = d;
  out.wbar.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.wbar[k] = std::ldexp(design.w_levels[k], -static_cast<int>(k));
  }

  out.c.resize(n + 1);
  out.upsilon.resize(n);
  out.c[0] = design.c0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = out.c[k];
    const double wk = out.wbar[k];
    // Spread of effective fields in frame k is [wk (1-d), sqrt(ck^2 + wk^2 (1+d)^2)];
    // the next frame rotates at its center and inherits half its width.
    const double upper = std::sqrt(ck * ck + wk * wk * (1.0 + d) * (1.0 + d));
    const double lower = wk * (1.0 - d);
    out.c[k + 1] = (upper - lower) / 2.0;
    out.upsilon[k] = (upper + lower) / 2.0;
  }

  out.alpha.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.alpha[k] = out.c[k] / out.wbar[k];
  return out;
}

double alpha_fixed_point(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("alpha_fixed_point: delta must lie in [0, 1)");
  }
  return 2.0 * delta / (1.0 - delta);
}

double next_alpha(double alpha, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("next_alpha: delta must lie in [0, 1)");
  }
  const double hi = 1.0 + delta;
  // sqrt(1 + a^2) - 1 cancels badly for small a; use the conjugate form.
  if (delta == 0.0) return alpha * alpha / (std::sqrt(1.0 + alpha * alpha) + 1.0);
  return std::sqrt(alpha * alpha + hi * hi) - (1.0 - delta);
}

OffsetTrajectory offset_trajectory(const FrameCascade& cascade, double omega,
                                   double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("offset_trajectory: epsilon must be positive");
  }
  const std::size_t n = cascade.n_frames();

  OffsetTrajectory tr;
  tr.omega = omega;
  tr.epsilon = epsilon;
  tr.f.resize(n + 1);
  tr.theta.resize(n);
  tr.f[0] = omega;
  tr.j_scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double field = epsilon * cascade.wbar[k];
    const double fk = tr.f[k];
    tr.theta[k] = std::atan2(field, fk);
    tr.j_scale *= std::cos(tr.theta[k]);
    tr.f[k + 1] = std::hypot(fk, field) - cascade.upsilon[k];
  }
  return tr;
}

}  // namespace modedec
