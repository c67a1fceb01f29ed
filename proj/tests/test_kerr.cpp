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
#include "jjal/kerr.hpp"
#include "oracles.hpp"

namespace jjal {
namespace {

using test::code_of;

TEST(Kerr, SelfKerrMatchesQuarticExpansion) {
  for (int n : {2, 4, 6, 8}) {
    const ArrayDesign d = test::small_design(n);
    const ModeSpectrum s = solve_modes(d, {0.15});
    const KerrTensor k = kerr_coefficients(d, s, n);
    const oracle::GeneralizedModes ref =
        oracle::generalized_modes(oracle::ladder(d, squid_inductance(d.josephson_inductance(), {0.15})), true);
    for (int m = 0; m < n; ++m) {
      const double expected = oracle::quartic_self_kerr(ref.flux.col(m), ref.omega(m), d.josephson_energy());
      EXPECT_NEAR(k.self_kerr(m), expected, 1e-6 * expected) << "N=" << n << " mode " << m;
    }
  }
}

TEST(Kerr, CoefficientsArePositiveAndSymmetric) {
  const ArrayDesign d = test::small_design(120);
  const KerrTensor k = kerr_coefficients(d, solve_modes(d, {}), 10);
  EXPECT_TRUE((k.self_kerr.array() > 0.0).all());
  EXPECT_TRUE((k.cross_kerr.array() >= 0.0).all());
  EXPECT_EQ(k.cross_kerr, k.cross_kerr.transpose());
  for (int m = 0; m < 10; ++m) EXPECT_NEAR(k.cross_kerr(m, m), 2.0 * k.self_kerr(m), 1e-12 * k.self_kerr(m));
}

TEST(Kerr, LinearInJosephsonEnergyAtFixedSpectrum) {
  ArrayDesign d = test::small_design(60);
  const ModeSpectrum s = solve_modes(d, {});
  const KerrTensor a = kerr_coefficients(d, s, 8);
  d.critical_current *= 2.0;
  const KerrTensor b = kerr_coefficients(d, s, 8);
  EXPECT_LT((b.self_kerr - 2.0 * a.self_kerr).cwiseAbs().maxCoeff(), 1e-12 * a.self_kerr.maxCoeff());
  EXPECT_LT((b.cross_kerr - 2.0 * a.cross_kerr).cwiseAbs().maxCoeff(), 1e-12 * a.cross_kerr.maxCoeff());
}

TEST(Kerr, SymmetrizationKeepsFrequenciesAndIsIdempotent) {
  const ModeSpectrum s = solve_modes(test::small_design(30), {});
  const ModeSpectrum once = symmetrize_modes(s);
  const ModeSpectrum twice = symmetrize_modes(once);
  EXPECT_TRUE(once.symmetrized);
  EXPECT_EQ(once.angular_frequencies, s.angular_frequencies);
  EXPECT_EQ(twice.node_fluxes, once.node_fluxes);
  EXPECT_LT((once.sqrt_capacitance * once.node_fluxes - once.eigenvectors).cwiseAbs().maxCoeff(), 1e-9);
  for (Eigen::Index m = 0; m < s.size(); ++m) {
    EXPECT_GT(mirror_overlap(once.node_fluxes.col(m)), 0.0) << m;
  }
}

TEST(Kerr, EtaEqualsBondSum) {
  const ArrayDesign d = test::small_design(20);
  const ModeSpectrum s = symmetrize_modes(solve_modes(d, {}));
  const Eigen::MatrixXd x = bond_amplitudes(s, d.josephson_capacitance, 4);
  ASSERT_EQ(x.rows(), 21);
  const double expected = (x.col(1).array().square() * x.col(2).array().square()).sum();
  EXPECT_NEAR(eta_factor(s, d.josephson_capacitance, 1, 2), expected, 1e-14 * expected);
}

TEST(Kerr, SelfKerrGrowsWithModeIndexOnReferenceDevices) {
  for (int dev : {1, 2, 3}) {
    const ArrayDesign d = reference_device(dev);
    const KerrTensor k = kerr_coefficients(d, solve_modes(d, {}), 12);
    for (int m = 1; m < 12; ++m) EXPECT_GT(k.self_kerr(m), k.self_kerr(m - 1)) << "device " << dev << " m=" << m;
  }
}

TEST(Kerr, RangeChecks) {
  const ArrayDesign d = test::small_design(8);
  const ModeSpectrum s = solve_modes(d, {});
  EXPECT_EQ(code_of([&] { kerr_coefficients(d, s, 9); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { eta_factor(s, d.josephson_capacitance, 0, 8); }), ErrorCode::IndexOutOfRange);
}

}  // namespace
}  // namespace jjal
