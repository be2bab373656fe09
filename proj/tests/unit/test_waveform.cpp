#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "modedec/errors.hpp"
#include "modedec/units.hpp"
#include "modedec/waveform.hpp"

namespace {

using namespace modedec;

ModeDesign reference_design() { return ModeDesign::uniform(6, khz_to_rad_s(4.8), khz_to_rad_s(22.5)); }

TEST(Synthesis, ZeroFramesIsContinuousWave) {
  const auto design = ModeDesign::uniform(0, 2000.0, 5000.0);
  const auto wf = synthesize_mode(design, build_cascade(design), 1e-3, 1e-6);
  ASSERT_EQ(wf.size(), 1000U);
  for (const auto& s : wf.samples()) {
    EXPECT_EQ(s.wx, 2000.0);
    EXPECT_EQ(s.wy, 0.0);
  }
}

TEST(Synthesis, FieldVanishesAtOrigin) {
  const auto design = reference_design();
  EXPECT_EQ(modulation_field(design, build_cascade(design), 0.0), 0.0);
}

TEST(Synthesis, TwoFramesAtQuarterTurn) {
  const double w = 3000.0;
  const auto design = ModeDesign::uniform(2, w, 9000.0);
  const auto fc = build_cascade(design);
  const double t = std::numbers::pi / (2.0 * fc.upsilon[0]);
  EXPECT_NEAR(modulation_field(design, fc, t), w, 1e-12 * w);
}

TEST(Synthesis, SamplesAreMidpointEvaluations) {
  const auto design = reference_design();
  const auto fc = build_cascade(design);
  const double dt = 0.5e-6;
  const auto wf = synthesize_mode(design, fc, 2e-3, dt);
  ASSERT_EQ(wf.size(), 4000U);
  for (std::size_t i = 0; i < wf.size(); i += 37) {
    EXPECT_EQ(wf[i].wx, design.w0());
    EXPECT_EQ(wf[i].wy, modulation_field(design, fc, (static_cast<double>(i) + 0.5) * dt));
  }
  EXPECT_EQ(wf.meta().generator, "mode-n6");
  EXPECT_EQ(wf.meta().design_hash, design_hash(design));
}

TEST(Synthesis, TriangleBound) {
  const auto design = reference_design();
  const auto wf = synthesize_mode(design, build_cascade(design), 20e-3, 0.5e-6);
  const double bound = 6.0 * design.w0();
  for (const auto& s : wf.samples()) ASSERT_LE(std::abs(s.wy), bound);
  EXPECT_LE(max_amplitude(wf), std::hypot(design.w0(), bound));
}

TEST(Synthesis, RejectsUndersampling) {
  const auto design = reference_design();
  const auto fc = build_cascade(design);
  const double limit = kTwoPi / fc.upsilon[0] / 20.0;
  EXPECT_THROW(synthesize_mode(design, fc, 1e-3, limit * 1.01), NumericalGuardError);
  EXPECT_NO_THROW(synthesize_mode(design, fc, 1e-3, limit * 0.99));
  EXPECT_THROW(synthesize_mode(design, fc, 1e-7, 1e-6), std::invalid_argument);
}

TEST(Synthesis, HashIsStableAndSensitive) {
  const auto a = reference_design();
  auto b = a;
  b.c0 *= 1.0 + 1e-15;
  EXPECT_EQ(design_hash(a), design_hash(reference_design()));
  EXPECT_NE(design_hash(a), design_hash(b));
  EXPECT_EQ(design_hash(a).size(), 16U);
}

TEST(Rms, ContinuousWave) {
  const auto cw = make_cw(1234.5, 1e-3, 1e-6);
  EXPECT_NEAR(rms_amplitude(cw), 1234.5, 1e-9);
  EXPECT_NEAR(max_amplitude(cw), 1234.5, 1e-12);
}

// Time average of A_0(t)^2 by brute-force quadrature, independent of the
// closed form.
double quadrature_mean_square(const ModeDesign& design, const FrameCascade& fc, double duration,
                              std::size_t steps) {
  double acc = 0.0;
  const double h = duration / static_cast<double>(steps);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = h * static_cast<double>(i);
    const double y = modulation_field(design, fc, t);
    const double weight = (i == 0 || i == steps) ? 0.5 : 1.0;
    acc += weight * y * y;
  }
  return acc * h / duration;
}

TEST(Rms, ClosedFormAgreesWithQuadrature) {
  const auto design = ModeDesign::uniform(8, khz_to_rad_s(4.8), khz_to_rad_s(22.5));
  const auto fc = build_cascade(design);
  const double duration = 60.0 * kTwoPi / fc.upsilon.back();
  const double ms = design.w0() * design.w0() +
                    quadrature_mean_square(design, fc, duration, 2'000'000);
  EXPECT_NEAR(std::sqrt(ms) / analytic_rms(design), 1.0, 0.02);
}

TEST(Rms, LongWaveformApproachesClosedForm) {
  const auto design = ModeDesign::uniform(8, khz_to_rad_s(4.8), khz_to_rad_s(22.5));
  const auto fc = build_cascade(design);
  const double duration = 50.0 * kTwoPi / fc.upsilon.back();
  const auto wf = synthesize_mode(design, fc, duration, 0.5e-6);
  const double expected = design.w0() * std::sqrt(1.0 + (1.0 - std::ldexp(1.0, -8)));
  EXPECT_DOUBLE_EQ(analytic_rms(design), expected);
  EXPECT_NEAR(rms_amplitude(wf) / expected, 1.0, 0.02);
}

TEST(Rms, ReferenceWaveformLevels) {
  const auto design = reference_design();
  const auto wf = synthesize_mode(design, build_cascade(design), 12.0 / 140.0, 0.5e-6);
  // Closed form sqrt(1 + 63/64) * 4.8 kHz = 6.7617 kHz.
  EXPECT_NEAR(rad_s_to_khz(analytic_rms(design)), 6.7617, 1e-4);
  EXPECT_NEAR(rad_s_to_khz(rms_amplitude(wf)), 6.7617, 0.02 * 6.7617);
  EXPECT_NEAR(rad_s_to_khz(max_amplitude(wf)), 12.0, 0.3);
}

TEST(Tppm, ZeroPhaseIsContinuousWave) {
  const auto tppm = make_tppm(500.0, 8e-6, 0.0, 1e-3, 1e-6);
  const auto cw = make_cw(500.0, 1e-3, 1e-6);
  ASSERT_EQ(tppm.size(), cw.size());
  for (std::size_t i = 0; i < cw.size(); ++i) {
    EXPECT_DOUBLE_EQ(tppm[i].wx, cw[i].wx);
    EXPECT_DOUBLE_EQ(tppm[i].wy, cw[i].wy);
  }
}

TEST(Tppm, ConstantAmplitudeAndAlternatingPhase) {
  const double phi = 15.0 * std::numbers::pi / 180.0;
  const auto wf = make_tppm(700.0, 5e-6, phi, 1e-3, 0.5e-6);
  for (const auto& s : wf.samples()) EXPECT_NEAR(std::hypot(s.wx, s.wy), 700.0, 1e-10);
  // First tip at +phi/2, second at -phi/2.
  EXPECT_NEAR(std::atan2(wf[0].wy, wf[0].wx), phi / 2.0, 1e-12);
  EXPECT_NEAR(std::atan2(wf[10].wy, wf[10].wx), -phi / 2.0, 1e-12);
}

TEST(Tppm, PeriodIsTwoTips) {
  const double dt = 0.5e-6;
  const auto wf = make_tppm(700.0, 5e-6, 0.3, 1e-3, dt);
  const std::size_t period = 20;  // 2 * 5 us / 0.5 us
  for (std::size_t i = 0; i + period < wf.size(); ++i) {
    ASSERT_EQ(wf[i], wf[i + period]) << i;
  }
  EXPECT_THROW(make_tppm(700.0, 0.1e-6, 0.3, 1e-3, dt), std::invalid_argument);
}

TEST(AmpPhase, RoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e5, 1e5);
  for (int i = 0; i < 10000; ++i) {
    const RfSample s{dist(rng), dist(rng)};
    const auto ap = to_amp_phase(s);
    ASSERT_GE(ap.phase, 0.0);
    ASSERT_LT(ap.phase, kTwoPi);
    const auto back = to_cartesian(ap);
    const double scale = std::hypot(s.wx, s.wy);
    ASSERT_NEAR(back.wx, s.wx, 1e-12 * scale);
    ASSERT_NEAR(back.wy, s.wy, 1e-12 * scale);
  }
  EXPECT_NEAR(to_amp_phase({0.0, 2.0}).phase, std::numbers::pi / 2.0, 1e-15);
  EXPECT_NEAR(to_amp_phase({0.0, -2.0}).phase, 1.5 * std::numbers::pi, 1e-15);
}

TEST(EqualizeRms, MatchesTarget) {
  const auto match = equalize_rms([](double a) { return make_cw(a, 1e-4, 1e-6); }, 4321.0,
                                  1.0, 1e5);
  EXPECT_NEAR(match.rms, 4321.0, 4321.0 * 1e-6);
  EXPECT_LE(match.steps, 50);
}

TEST(EqualizeRms, ReportsFailure) {
  EXPECT_THROW(equalize_rms([](double a) { return make_cw(a, 1e-4, 1e-6); }, 1e6, 1.0, 10.0),
               NumericalGuardError);
  EXPECT_THROW(equalize_rms([](double a) { return make_cw(a, 1e-4, 1e-6); }, 1.0, 10.0, 1.0),
               std::invalid_argument);
}

TEST(Waveform, RejectsBadConstruction) {
  EXPECT_THROW(Waveform(0.0, {{1.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(Waveform(1e-6, {}), std::invalid_argument);
}

}  // namespace
