#pragma once

#include <cstddef>
#include <vector>

namespace modedec {

/// Design inputs for a multiply-modulated decoupling field.
///
/// `w_levels` holds w_0..w_N in rad/s; the field is
/// w_0 I_x + sum_k w_k prod_{j<k} cos(u_j t) sin(u_k t) I_y, so the number of
/// modulations is `w_levels.size() - 1`. `c0` is the half-width of the
/// chemical-shift band [-c0, c0] in rad/s. `delta_design` is the RF
/// inhomogeneity margin absorbed by the robust recursion (0 = ideal RF).
struct ModeDesign {
  std::vector<double> w_levels;
  double c0 = 0.0;
  double delta_design = 0.0;

  /// Equal amplitudes on every level, the default ladder.
  static ModeDesign uniform(std::size_t n_frames, double w0, double c0,
                            double delta_design = 0.0);

  std::size_t n_frames() const { return w_levels.empty() ? 0 : w_levels.size() - 1; }
  double w0() const { return w_levels.front(); }

  /// Throws std::invalid_argument if an invariant is broken.
  void validate() const;
};

/// Per-frame quantities derived from a ModeDesign. Index k of `wbar`, `c` and
/// `alpha` refers to frame k (0..N); `upsilon[k-1]` is the modulation
/// frequency u_k that takes frame k-1 into frame k.
struct FrameCascade {
  std::vector<double> wbar;     // 2^-k w_k
  std::vector<double> c;        // residual shift bound
  std::vector<double> upsilon;  // u_1..u_N, strictly decreasing
  std::vector<double> alpha;    // c_k / wbar_k
  double delta_design = 0.0;

  std::size_t n_frames() const { return upsilon.size(); }
};

FrameCascade build_cascade(const ModeDesign& design);

/// Fixed point 2d/(1-d) of the inhomogeneity-robust alpha map.
double alpha_fixed_point(double delta);

/// One step of the alpha map for an equal-amplitude ladder:
/// sqrt(alpha^2 + (1+d)^2) - (1-d). With d = 0 this is sqrt(1+alpha^2) - 1.
double next_alpha(double alpha, double delta = 0.0);

/// How a single offset omega travels through the frame cascade when the
/// realized RF amplitude is epsilon times nominal.
struct OffsetTrajectory {
  double omega = 0.0;
  double epsilon = 1.0;
  std::vector<double> f;      // f_0..f_N, f_0 = omega, signed
  std::vector<double> theta;  // theta_1..theta_N, tilt entering frame k
  double j_scale = 1.0;       // prod_k cos(theta_k)
};

/// theta_k = atan2(eps * wbar_{k-1}, f_{k-1}) and
/// f_k = sqrt(f_{k-1}^2 + (eps * wbar_{k-1})^2) - u_k.
OffsetTrajectory offset_trajectory(const FrameCascade& cascade, double omega,
                                   double epsilon = 1.0);

}  // namespace modedec
