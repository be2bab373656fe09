#pragma once

#include <numbers>

namespace modedec {

// All frequencies inside the library are angular (rad/s). Conversions happen
// once, at the configuration boundary.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double khz_to_rad_s(double khz) { return kTwoPi * 1.0e3 * khz; }
constexpr double hz_to_rad_s(double hz) { return kTwoPi * hz; }
constexpr double rad_s_to_khz(double rad_s) { return rad_s / (kTwoPi * 1.0e3); }
constexpr double rad_s_to_hz(double rad_s) { return rad_s / kTwoPi; }

constexpr double us_to_s(double us) { return us * 1.0e-6; }
constexpr double ms_to_s(double ms) { return ms * 1.0e-3; }

}  // namespace modedec
