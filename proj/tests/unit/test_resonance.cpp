#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gap_oracle.hpp"
#include "modedec/cascade.hpp"
#include "modedec/resonance.hpp"
#include "modedec/units.hpp"

namespace {

using namespace modedec;

std::vector<double> reference_upsilon() {
  return build_cascade(ModeDesign::uniform(6, khz_to_rad_s(4.8), khz_to_rad_s(22.5))).upsilon;
}

std::vector<double> random_decreasing(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ratio(1.05, 4.0);
  std::vector<double> u(n);
  u[0] = std::uniform_real_distribution<double>(100.0, 1e5)(rng);
  for (std::size_t i = 1; i < n; ++i) u[i] = u[i - 1] / ratio(rng);
  return u;
}

TEST(MinGap, SingleFrame) {
  const std::vector<double> u{123.0};
  const auto r = min_gap(u);
  EXPECT_EQ(r.delta_min, 246.0);
  EXPECT_EQ(r.assignment.k, 1U);
  EXPECT_EQ(r.assignment.a, -2);
}

TEST(MinGap, TwoFramesHandEnumeration) {
  // k=1: |+-20 + 3d|, d in [-3,3] -> 11.  k=2: |10c +- 6| -> 4.
  const std::vector<double> u{10.0, 3.0};
  const auto r = min_gap(u);
  EXPECT_EQ(r.delta_min, 4.0);
  const GapAssignment expected{2, {-1}, 2, {}};
  EXPECT_EQ(r.assignment, expected);
  EXPECT_EQ(oracle::brute_force_gap(u).min_abs, 4.0);
}

TEST(MinGap, ReferenceDesign) {
  const auto u = reference_upsilon();
  const auto r = min_gap(u, hz_to_rad_s(500.0));
  const auto o = oracle::brute_force_gap(u, hz_to_rad_s(500.0));
  EXPECT_EQ(r.delta_min, o.min_abs);
  EXPECT_EQ(r.near_resonances, o.below);
  // Independent double-precision enumeration gave 0.8824168856 Hz and 616
  // lattice points under 500 Hz.
  EXPECT_NEAR(rad_s_to_hz(r.delta_min), 0.8824168856, 1e-8);
  EXPECT_EQ(r.near_resonances, 616U);
  EXPECT_GT(r.delta_min, 0.0);
  const GapAssignment expected{2, {-1}, 2, {1, 1, -3, -1}};
  EXPECT_EQ(r.assignment, expected);
}

TEST(MinGap, AssignmentReproducesMinimum) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_decreasing(rng, 1 + trial % 5);
    const auto r = min_gap(u);
    EXPECT_EQ(std::abs(lattice_offset(r.assignment, u)), r.delta_min);
  }
}

TEST(MinGap, AgreesWithBruteForce) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    const auto u = random_decreasing(rng, n);
    const double threshold = u.back() * 0.7;
    const auto r = min_gap(u, threshold);
    const auto o = oracle::brute_force_gap(u, threshold);
    ASSERT_EQ(r.delta_min, o.min_abs) << "n=" << n;
    ASSERT_EQ(r.near_resonances, o.below) << "n=" << n;
    ASSERT_EQ(o.visited, lattice_size(n));
  }
}

TEST(MinGap, SignSymmetry) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_decreasing(rng, 4);
    GapAssignment g{3, {1, -1}, 2, {3}};
    GapAssignment neg{3, {-1, 1}, -2, {-3}};
    ASSERT_EQ(std::abs(lattice_offset(g, u)), std::abs(lattice_offset(neg, u)));
  }
}

TEST(MinGap, AddingAFrameNeverWidensTheGap) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    auto u = random_decreasing(rng, 1 + trial % 4);
    const double before = min_gap(u).delta_min;
    u.push_back(u.back() / std::uniform_real_distribution<double>(1.05, 4.0)(rng));
    ASSERT_LE(min_gap(u).delta_min, before);
  }
}

TEST(MinGap, LatticeSize) {
  EXPECT_EQ(lattice_size(1), 2U);
  EXPECT_EQ(lattice_size(2), 14U + 6U);
  EXPECT_EQ(lattice_size(6), 58460U);
}

TEST(MinGap, RejectsBadInput) {
  EXPECT_THROW(min_gap(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(min_gap(std::vector<double>{1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(min_gap(std::vector<double>{2.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(min_gap(std::vector<double>{2.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(gap_report(std::vector<double>{1.0, 2.0}, 1.0), std::invalid_argument);
  const std::vector<double> u{10.0, 3.0};
  EXPECT_THROW(lattice_offset(GapAssignment{2, {}, 2, {}}, u), std::invalid_argument);
}

TEST(GapReport, ZeroThresholdIsEmpty) {
  EXPECT_TRUE(gap_report(reference_upsilon(), 0.0).empty());
}

TEST(GapReport, JustAboveMinimumContainsIt) {
  const auto u = reference_upsilon();
  const auto r = min_gap(u);
  const auto hits = gap_report(u, std::nextafter(r.delta_min, INFINITY));
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits.front(), r.assignment);
  for (const auto& h : hits) EXPECT_EQ(std::abs(lattice_offset(h, u)), r.delta_min);
}

TEST(GapReport, ReferenceThresholdCount) {
  const auto u = reference_upsilon();
  const auto hits = gap_report(u, hz_to_rad_s(500.0));
  EXPECT_EQ(hits.size(), 616U);
  for (const auto& h : hits) ASSERT_LT(std::abs(lattice_offset(h, u)), hz_to_rad_s(500.0));
  // Enumeration order: k never decreases.
  EXPECT_TRUE(std::is_sorted(hits.begin(), hits.end(),
                             [](const auto& a, const auto& b) { return a.k < b.k; }));
}

}  // namespace
