// Copyright 2026 The jjal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jjal/constants.hpp"
#include "jjal/fits.hpp"
#include "jjal/readout.hpp"
#include "jjal/synth.hpp"

namespace jjal {
namespace {

using test::code_of;

constexpr double kMHz = kTwoPi * 1e6;

// ---- flux ------------------------------------------------------------------

TEST(FluxFit, ModelEqualsF0AtOffsetCurrent) {
  for (double gamma : {0.1, 0.5, 0.67, 0.92, 1.0}) {
    const FluxFitParams p{7.1e9, gamma, 437.0, 1.3e-3};
    EXPECT_EQ(flux_model(p, -p.current_offset), p.f0) << gamma;
  }
}

TEST(FluxFit, RecoversSeededTruth) {
  const FluxFitParams truth{7.0e9, 0.9, 500.0, 0.2e-3};
  const auto data = synth_flux_map(truth, -1.6e-3, 1.2e-3, 141, 2e6, 11);
  const FluxFit f = fit_flux_modulation(data);
  EXPECT_TRUE(f.fit.converged);
  EXPECT_TRUE(f.identifiable);
  EXPECT_NEAR(f.params.f0, truth.f0, 2e6);
  EXPECT_NEAR(f.params.gamma_l, truth.gamma_l, 0.01);
  EXPECT_NEAR(f.params.lb, truth.lb, 2.0);
  EXPECT_NEAR(f.params.current_offset, truth.current_offset, 5e-6);
  EXPECT_NEAR(f.fit.value("offset_ma"), 0.2, 0.005);
}

TEST(FluxFit, ShortSpanIsFlagged) {
  const FluxFitParams truth{7.0e9, 0.9, 500.0, 0.0};
  const auto data = synth_flux_map(truth, -0.3e-3, 0.3e-3, 40, 0.0, 1);
  const FluxFit f = fit_flux_modulation(data, truth);
  EXPECT_FALSE(f.identifiable);
  bool flagged = false;
  for (const auto& w : f.fit.warnings) flagged |= w.find("IdentifiabilityWarning") != std::string::npos;
  EXPECT_TRUE(flagged);
}

TEST(FluxFit, Deterministic) {
  const auto data = synth_flux_map({6.5e9, 0.8, 450.0, -0.1e-3}, -2e-3, 2e-3, 80, 3e6, 5);
  EXPECT_EQ(fit_flux_modulation(data).fit.parameters, fit_flux_modulation(data).fit.parameters);
}

// ---- dimer -----------------------------------------------------------------

DimerFitParams sample_dimer() {
  DimerFitParams p;
  p.omega_plus = kTwoPi * 6.335e9;
  p.omega_minus = kTwoPi * 5.665e9;
  p.kappa_plus = 148 * kMHz;
  p.kappa_minus = 139 * kMHz;
  p.gamma_plus = 4 * kMHz;
  p.gamma_minus = 3 * kMHz;
  p.phase = 0.3;
  return p;
}

TEST(DimerModel, LosslessLimitHasUnitModulus) {
  DimerFitParams p = sample_dimer();
  p.gamma_plus = p.gamma_minus = 0.0;
  for (double f = 5e9; f < 7e9; f += 7e6) EXPECT_NEAR(std::abs(dimer_reflection(p, kTwoPi * f)), 1.0, 1e-9);
  for (double f = 5e9; f < 7e9; f += 7e6) {
    EXPECT_NEAR(std::abs(resonator_reflection(kTwoPi * f, kTwoPi * 6e9, 10 * kMHz, 0.0)), 1.0, 1e-9);
  }
}

TEST(DimerModel, SingleModeIsConjugatePhysicsForm) {
  // Physics form -1 + k(k+g)/2 + i k d over d^2 + (k+g)^2/4, conjugated.
  const double k = 20 * kMHz, g = 2 * kMHz, wm = kTwoPi * 6e9;
  for (double f : {5.98e9, 6.0e9, 6.013e9}) {
    const double d = kTwoPi * f - wm;
    const Complex physics = -1.0 + Complex(k * (k + g) / 2.0, k * d) / (d * d + (k + g) * (k + g) / 4.0);
    EXPECT_LT(std::abs(resonator_reflection(kTwoPi * f, wm, k, g) - std::conj(physics)), 1e-12);
  }
}

TEST(DimerFit, RecoversSeededTruth) {
  const DimerFitParams truth = sample_dimer();
  const ComplexTrace t = synth_dimer(truth, linear_grid(5.3e9, 6.7e9, 1e6), 0.01, 21);
  const DimerFit f = fit_dimer_reflection(t);
  EXPECT_TRUE(f.fit.converged);
  EXPECT_NEAR(f.params.omega_plus / kTwoPi, 6.335e9, 0.5e6);
  EXPECT_NEAR(f.params.omega_minus / kTwoPi, 5.665e9, 0.5e6);
  EXPECT_NEAR(f.params.kappa_plus / kMHz, 148, 2.0);
  EXPECT_NEAR(f.params.kappa_minus / kMHz, 139, 2.0);
  EXPECT_NEAR(f.params.gamma_plus / kMHz, 4, 1.0);
  EXPECT_NEAR(f.params.gamma_minus / kMHz, 3, 1.0);
  EXPECT_NEAR(f.params.phase, 0.3, 0.01);
  EXPECT_NEAR(std::sqrt(f.params.asymmetry) / kMHz, 21.0, 1.0);
}

TEST(DimerFit, TooFewPoints) {
  const ComplexTrace t = synth_dimer(sample_dimer(), linear_grid(5.9e9, 6.0e9, 20e6), 0.0, 1);
  EXPECT_EQ(code_of([&] { fit_dimer_reflection(t); }), ErrorCode::InsufficientData);
}

TEST(DimerAsymmetry, InvertsForwardMap) {
  for (double detuning : {-40.0, -5.0, 0.0, 12.0, 60.0}) {
    const double w1 = kTwoPi * 6e9 + 0.5 * detuning * kMHz;
    const double w2 = kTwoPi * 6e9 - 0.5 * detuning * kMHz;
    const DimerModes m = dimer_forward(w1, w2, 335 * kMHz, 287 * kMHz);
    const DimerAsymmetry a = dimer_asymmetry(m.omega_plus, m.omega_minus, m.kappa_plus, m.kappa_minus);
    EXPECT_NEAR(a.omega_1, w1, 1e-6 * kMHz) << detuning;
    EXPECT_NEAR(a.omega_2, w2, 1e-6 * kMHz) << detuning;
    EXPECT_NEAR(a.coupling, 335 * kMHz, 1e-6 * kMHz) << detuning;
    EXPECT_NEAR(m.kappa_plus + m.kappa_minus, 287 * kMHz, 1e-6 * kMHz);
  }
}

TEST(DimerAsymmetry, RejectsInvalidInput) {
  EXPECT_EQ(code_of([] { dimer_asymmetry(1.0, 2.0, 1.0, 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { dimer_asymmetry(2.0, 1.0, 0.0, 0.0); }), ErrorCode::InvalidArgument);
}

// ---- gain ------------------------------------------------------------------

TEST(GainFit, ConstantProductFamily) {
  for (double g_db : {12.0, 16.0, 20.0, 23.2, 26.0}) {
    const GainLobe lobe = constant_product_lobe(g_db, 170e6, 6e9);
    EXPECT_NEAR(lobe.gain_bandwidth, 170e6, 1e-3);
    const auto data = synth_gain({lobe}, linear_grid(5.8e9, 6.2e9, 0.25e6), 0.1, 40 + static_cast<int>(g_db));
    const GainFit f = fit_gain_profile(data);
    ASSERT_EQ(f.lobes.size(), 1u);
    EXPECT_NEAR(f.lobes[0].gain_bandwidth / 170e6, 1.0, 0.02) << g_db;
    EXPECT_NEAR(f.lobes[0].gain_db, g_db, 0.1);
  }
}

TEST(GainFit, TwoLobes) {
  const std::vector<GainLobe> truth{constant_product_lobe(20.0, 140e6, 5.98e9), constant_product_lobe(18.0, 140e6,
                                                                                                    6.03e9)};
  const auto data = synth_gain(truth, linear_grid(5.9e9, 6.1e9, 0.1e6), 0.05, 8);
  const GainFit f = fit_gain_profile(data);
  ASSERT_EQ(f.lobes.size(), 2u);
  EXPECT_NEAR(f.lobes[0].center, 5.98e9, 0.2e6);
  EXPECT_NEAR(f.lobes[1].center, 6.03e9, 0.2e6);
  EXPECT_NEAR(f.lobes[0].gain_db, 20.0, 0.2);
  EXPECT_NEAR(f.lobes[1].gain_db, 18.0, 0.2);
}

TEST(GainFit, NoLobe) {
  std::vector<GainSample> flat;
  for (int i = 0; i < 50; ++i) flat.push_back({6e9 + i * 1e6, 0.5});
  EXPECT_EQ(code_of([&] { fit_gain_profile(flat); }), ErrorCode::NoLobeFound);
}

TEST(GainFit, ProductFormula) {
  EXPECT_NEAR(gain_bandwidth_product(20.0, 17e6), 170e6, 1e-6);
  const GainLobe l{20.0, 6e9, 10e6, 100e6};
  EXPECT_NEAR(gain_model({l}, 6e9), 100.0, 1e-12);
  EXPECT_NEAR(gain_model({l}, 6e9 + 5e6), 1.0 + 99.0 / 2.0, 1e-12);
}

// ---- noise visibility ------------------------------------------------------

TEST(NoiseVisibility, RecoversBump) {
  const auto [on, off] = synth_noise_spectra(linear_grid(5.9e9, 6.1e9, 0.5e6), -140.0, 14.2, 6e9, 9.2e6, 0.0, 3);
  const NoiseVisibility v = noise_visibility(on, off);
  EXPECT_NEAR(v.max_visibility, 14.2, 1e-9);
  EXPECT_NEAR(v.max_frequency, 6e9, 1.0);
}

TEST(NoiseVisibility, GridErrors) {
  const auto [on, off] = synth_noise_spectra(linear_grid(5.9e9, 6.1e9, 1e6), -140.0, 10.0, 6e9, 9e6, 0.1, 3);
  auto shifted = off;
  shifted[3].frequency += 1e3;
  EXPECT_EQ(code_of([&] { noise_visibility(on, shifted); }), ErrorCode::GridMismatch);
  EXPECT_EQ(code_of([&] { noise_visibility({}, {}); }), ErrorCode::EmptyGrid);
}

// ---- Ramsey ----------------------------------------------------------------

TEST(RamseyFit, SingleFrequency) {
  const auto data = synth_ramsey({{0.5, 1.0e6, 0.2}}, 6.5e-6, 0.5, 20e-6, 400, 0.02, 4);
  const FitResult f = ramsey_fit(data, RamseyMode::Single);
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.value("f_mhz"), 1.0, 0.005);
  EXPECT_NEAR(f.value("t2_us"), 6.5, 0.5);
  EXPECT_NEAR(f.value("amplitude"), 0.5, 0.03);
  EXPECT_NEAR(ramsey_model(f, RamseyMode::Single, 0.0), 0.5 + 0.5 * std::cos(0.2), 0.03);
}

TEST(RamseyFit, TwoFrequencies) {
  const auto data = synth_ramsey({{0.25, 1.03e6, 0.0}, {0.25, 1.19e6, 0.0}}, 6.5e-6, 0.5, 25e-6, 500, 0.01, 5);
  const FitResult f = ramsey_fit(data, RamseyMode::Double);
  EXPECT_TRUE(f.converged);
  const double lo = std::min(f.value("f1_mhz"), f.value("f2_mhz"));
  const double hi = std::max(f.value("f1_mhz"), f.value("f2_mhz"));
  EXPECT_NEAR(lo, 1.03, 0.01);
  EXPECT_NEAR(hi, 1.19, 0.01);
  EXPECT_NEAR(f.value("t2_us"), 6.5, 0.5);
}

TEST(RamseyFit, FlatTraceIsUnidentifiable) {
  const auto data = synth_ramsey({{1e-6, 1.0e6, 0.0}}, 6.5e-6, 0.5, 20e-6, 200, 0.05, 6);
  const FitResult f = ramsey_fit(data, RamseyMode::Single);
  bool flagged = false;
  for (const auto& w : f.warnings) flagged |= w.find("T2Unidentifiable") != std::string::npos;
  EXPECT_TRUE(flagged);
}

}  // namespace
}  // namespace jjal
