#include "modedec/su2.hpp"

#include <cmath>

namespace modedec {

Su2 Su2::rotation(double hx, double hy, double hz, double dt) {
  const double norm = std::sqrt(hx * hx + hy * hy + hz * hz);
  const double half_angle = 0.5 * norm * dt;
  const double c = std::cos(half_angle);
  // sin(x)/|h|, continuous at |h| = 0.
  const double s = norm > 0.0 ? std::sin(half_angle) / norm : 0.5 * dt;
  return {{c, -s * hz}, {-s * hy, -s * hx}};
}

}  // namespace modedec
