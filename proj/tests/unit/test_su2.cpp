#include <array>
#include <cmath>
#include <numbers>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "modedec/su2.hpp"

namespace {

using modedec::Su2;
using cplx = std::complex<double>;
using M2 = std::array<std::array<cplx, 2>, 2>;

M2 mul(const M2& a, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// exp(-i dt h.sigma/2) by a 40-term Taylor series after 2^10 squarings.
M2 taylor_rotation(double hx, double hy, double hz, double dt) {
  const double scale = std::ldexp(1.0, -10);
  const cplx mi(0.0, -0.5 * dt * scale);
  const M2 x{{{mi * hz, mi * cplx(hx, -hy)}, {mi * cplx(hx, hy), -mi * hz}}};
  M2 term{{{1.0, 0.0}, {0.0, 1.0}}};
  M2 sum = term;
  for (int n = 1; n < 40; ++n) {
    term = mul(term, x);
    for (auto& row : term)
      for (auto& v : row) v /= static_cast<double>(n);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sum[i][j] += term[i][j];
  }
  for (int s = 0; s < 10; ++s) sum = mul(sum, sum);
  return sum;
}

TEST(Su2, MatchesSeriesExponential) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> field(-2e5, 2e5);
  for (int trial = 0; trial < 200; ++trial) {
    const double hx = field(rng), hy = field(rng), hz = field(rng);
    const double dt = 1e-5;
    const auto u = Su2::rotation(hx, hy, hz, dt);
    const auto ref = taylor_rotation(hx, hy, hz, dt);
    ASSERT_NEAR(std::abs(u.a - ref[0][0]), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(u.b - ref[0][1]), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(-std::conj(u.b) - ref[1][0]), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(std::conj(u.a) - ref[1][1]), 0.0, 1e-12);
  }
}

TEST(Su2, ZeroFieldIsIdentity) {
  const auto u = Su2::rotation(0.0, 0.0, 0.0, 1e-3);
  EXPECT_EQ(u.a, cplx(1.0, 0.0));
  EXPECT_EQ(u.b, cplx(0.0, 0.0));
}

TEST(Su2, StepsCompose) {
  const auto one = Su2::rotation(3.0, -2.0, 5.0, 0.7);
  const auto half = Su2::rotation(3.0, -2.0, 5.0, 0.35);
  const auto two = half * half;
  EXPECT_NEAR(std::abs(one.a - two.a), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(one.b - two.b), 0.0, 1e-15);
}

TEST(Su2, FullTurnIsMinusIdentity) {
  const auto u = Su2::rotation(0.0, 0.0, 1.0, 2.0 * std::numbers::pi);
  EXPECT_NEAR(u.a.real(), -1.0, 1e-15);
  EXPECT_NEAR(std::abs(u.b), 0.0, 1e-15);
}

TEST(Su2, DeterminantStaysUnitOverLongChains) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> field(-1.5e5, 1.5e5);
  Su2 u;
  for (int i = 0; i < 171'429; ++i) {
    u = Su2::rotation(field(rng), field(rng), field(rng), 0.5e-6) * u;
  }
  EXPECT_NEAR(u.det(), 1.0, 1e-10);
}

TEST(Su2, OverlapOfEqualElementsIsExactlyOne) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> field(-1e5, 1e5);
  Su2 u;
  for (int i = 0; i < 5000; ++i) u = Su2::rotation(field(rng), field(rng), field(rng), 1e-6) * u;
  EXPECT_EQ(modedec::half_trace_overlap(u, u), 1.0);
  EXPECT_NEAR(modedec::half_trace_overlap(u, u.adjoint().adjoint()), 1.0, 0.0);
}

}  // namespace
