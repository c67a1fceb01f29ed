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
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jjal/least_squares.hpp"

namespace jjal {
namespace {

using test::code_of;

struct DecayData {
  Eigen::VectorXd t;
  Eigen::VectorXd y;
};

DecayData decay(double amplitude, double tau, double offset, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, noise);
  DecayData d{Eigen::VectorXd::LinSpaced(60, 0.0, 5.0), Eigen::VectorXd(60)};
  for (int i = 0; i < 60; ++i) d.y(i) = amplitude * std::exp(-d.t(i) / tau) + offset + (noise > 0 ? n(rng) : 0.0);
  return d;
}

ResidualFunction decay_residuals(const DecayData& d) {
  return [&d](const Eigen::VectorXd& p) -> Eigen::VectorXd {
    return (p(0) * (-d.t.array() / p(1)).exp() + p(2)).matrix() - d.y;
  };
}

TEST(LeastSquares, RecoversNoiselessParameters) {
  const DecayData d = decay(2.0, 1.3, 0.4, 0.0, 0);
  Eigen::VectorXd init(3);
  init << 1.0, 0.5, 0.0;
  const FitResult r = least_squares_fit(decay_residuals(d), init, ParameterBounds::unbounded(3), {"a", "tau", "c"});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value("a"), 2.0, 1e-8);
  EXPECT_NEAR(r.value("tau"), 1.3, 1e-8);
  EXPECT_NEAR(r.value("c"), 0.4, 1e-8);
  EXPECT_LT(r.residual_rms, 1e-10);
  EXPECT_EQ(code_of([&] { r.value("missing"); }), ErrorCode::IndexOutOfRange);
}

TEST(LeastSquares, StandardErrorsMatchMonteCarloScatter) {
  constexpr int kTrials = 400;
  constexpr double kNoise = 0.05;
  Eigen::MatrixXd estimates(kTrials, 3);
  Eigen::VectorXd reported = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd init(3);
  init << 1.5, 1.0, 0.2;
  for (int k = 0; k < kTrials; ++k) {
    const DecayData d = decay(2.0, 1.3, 0.4, kNoise, 1000 + k);
    const FitResult r = least_squares_fit(decay_residuals(d), init, ParameterBounds::unbounded(3), {"a", "tau", "c"});
    estimates.row(k) = r.parameters.transpose();
    reported += r.standard_errors / kTrials;
  }
  const Eigen::RowVectorXd mean = estimates.colwise().mean();
  for (int j = 0; j < 3; ++j) {
    const double spread = std::sqrt((estimates.col(j).array() - mean(j)).square().sum() / (kTrials - 1));
    EXPECT_NEAR(reported(j) / spread, 1.0, 0.15) << "parameter " << j;
  }
}

TEST(LeastSquares, LorentzianTruthWithinThreeStandardErrors) {
  // Peak 1, center 0, half-width 0.5, 1% Gaussian noise; 100 independent records.
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(101, -3.0, 3.0);
  const double truth[] = {1.0, 0.0, 0.5};
  int covered[3] = {0, 0, 0};
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::mt19937_64 rng(1000 + trial);
    std::normal_distribution<double> n(0.0, 0.01);
    Eigen::VectorXd y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = 1.0 / (1.0 + std::pow(x(i) / 0.5, 2)) + n(rng);
    auto residuals = [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
      return (p(0) / (1.0 + ((x.array() - p(1)) / p(2)).square())).matrix() - y;
    };
    Eigen::VectorXd init(3);
    init << 0.8, 0.1, 0.7;
    const FitResult r = least_squares_fit(residuals, init, ParameterBounds::unbounded(3), {"a", "x0", "w"});
    ASSERT_TRUE(r.converged) << trial;
    for (int k = 0; k < 3; ++k) covered[k] += std::abs(r.parameters(k) - truth[k]) <= 3.0 * r.standard_errors(k);
  }
  for (int k = 0; k < 3; ++k) EXPECT_GE(covered[k], 95) << "parameter " << k;
}

TEST(LeastSquares, RespectsBounds) {
  const DecayData d = decay(2.0, 1.3, 0.4, 0.0, 0);
  ParameterBounds b = ParameterBounds::unbounded(3);
  b.upper(1) = 1.0;
  Eigen::VectorXd init(3);
  init << 1.0, 0.5, 0.0;
  const FitResult r = least_squares_fit(decay_residuals(d), init, b, {"a", "tau", "c"});
  EXPECT_LE(r.value("tau"), 1.0);
  EXPECT_NEAR(r.value("tau"), 1.0, 1e-9);
  init(1) = 2.0;
  EXPECT_EQ(code_of([&] { least_squares_fit(decay_residuals(d), init, b, {"a", "tau", "c"}); }),
            ErrorCode::InvalidArgument);
}

TEST(LeastSquares, RejectsDegenerateProblems) {
  const auto flat = [](const Eigen::VectorXd&) -> Eigen::VectorXd { return Eigen::VectorXd::Ones(5); };
  EXPECT_EQ(code_of([&] { least_squares_fit(flat, Eigen::VectorXd::Zero(2), ParameterBounds::unbounded(2), {"x", "y"}); }),
            ErrorCode::SingularJacobian);
  const auto short_r = [](const Eigen::VectorXd& p) -> Eigen::VectorXd { return p.head(1); };
  EXPECT_EQ(
      code_of([&] { least_squares_fit(short_r, Eigen::VectorXd::Ones(2), ParameterBounds::unbounded(2), {"x", "y"}); }),
      ErrorCode::InsufficientData);
}

TEST(LeastSquares, RankDeficiencyGivesNanErrors) {
  // Only the sum x + y is constrained.
  const auto r = [](const Eigen::VectorXd& p) -> Eigen::VectorXd {
    Eigen::VectorXd out(4);
    for (int i = 0; i < 4; ++i) out(i) = (p(0) + p(1)) * (i + 1) - 3.0 * (i + 1);
    return out;
  };
  const FitResult f = least_squares_fit(r, Eigen::VectorXd::Zero(2), ParameterBounds::unbounded(2), {"x", "y"});
  EXPECT_NEAR(f.value("x") + f.value("y"), 3.0, 1e-8);
  EXPECT_TRUE(std::isnan(f.error("x")));
  EXPECT_FALSE(f.warnings.empty());
}

TEST(LeastSquares, IterationCapIsReported) {
  const DecayData d = decay(2.0, 1.3, 0.4, 0.0, 0);
  Eigen::VectorXd init(3);
  init << 1.0, 0.5, 0.0;
  LeastSquaresOptions o;
  o.max_iterations = 2;
  const FitResult r =
      least_squares_fit(decay_residuals(d), init, ParameterBounds::unbounded(3), {"a", "tau", "c"}, o);
  EXPECT_FALSE(r.converged);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.warnings.front().rfind("MaxIterations", 0), 0u);
}

TEST(LeastSquares, BitIdenticalReruns) {
  const DecayData d = decay(2.0, 1.3, 0.4, 0.05, 3);
  Eigen::VectorXd init(3);
  init << 1.0, 0.5, 0.0;
  const FitResult a = least_squares_fit(decay_residuals(d), init, ParameterBounds::unbounded(3), {"a", "tau", "c"});
  const FitResult b = least_squares_fit(decay_residuals(d), init, ParameterBounds::unbounded(3), {"a", "tau", "c"});
  EXPECT_EQ(a.parameters, b.parameters);
  EXPECT_EQ(a.standard_errors, b.standard_errors);
}

TEST(LeastSquares, JacobianStepsBackwardAtUpperBound) {
  const auto r = [](const Eigen::VectorXd& p) -> Eigen::VectorXd { return p.array().square(); };
  ParameterBounds b = ParameterBounds::unbounded(1);
  b.upper(0) = 2.0;
  Eigen::VectorXd x(1);
  x << 2.0;
  const Eigen::MatrixXd j = forward_difference_jacobian(r, x, r(x), b);
  EXPECT_NEAR(j(0, 0), 4.0, 1e-6);
}

}  // namespace
}  // namespace jjal
