#pragma once

#include <cmath>
#include <complex>

namespace modedec {

/// Element of SU(2) stored as its first row: U = [[a, b], [-conj(b), conj(a)]].
struct Su2 {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};

  static Su2 identity() { return {}; }

  /// exp(-i dt (hx Ix + hy Iy + hz Iz)) with I = sigma/2, by the closed-form
  /// axis-angle formula.
  static Su2 rotation(double hx, double hy, double hz, double dt);

  Su2 adjoint() const { return {std::conj(a), -b}; }
  double det() const { return dot(*this, *this); }

  /// Re(a conj(a') + b conj(b')), i.e. Re Tr(U V^dagger) / 2.
  static double dot(const Su2& u, const Su2& v) {
    return u.a.real() * v.a.real() + u.a.imag() * v.a.imag() + u.b.real() * v.b.real() +
           u.b.imag() * v.b.imag();
  }

  friend Su2 operator*(const Su2& l, const Su2& r) {
    return {l.a * r.a - l.b * std::conj(r.b), l.a * r.b + l.b * std::conj(r.a)};
  }
};

/// Re Tr(U V^dagger) / 2, divided by sqrt(det U det V) so that round-off in
/// the accumulated propagators does not leak into the overlap. Equal
/// arguments give exactly 1.
inline double half_trace_overlap(const Su2& u, const Su2& v) {
  return Su2::dot(u, v) / std::sqrt(u.det() * v.det());
}

}  // namespace modedec
