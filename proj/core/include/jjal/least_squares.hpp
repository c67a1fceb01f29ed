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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace jjal {

/// Maps a parameter vector to the residual vector (model - data).
using ResidualFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ParameterBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static ParameterBounds unbounded(Eigen::Index n);
};

struct LeastSquaresOptions {
  int max_iterations = 500;
  double cost_tolerance = 1e-12;      // relative change of 0.5 |r|^2
  double gradient_tolerance = 1e-10;  // inf-norm of J^T r
  double initial_damping = 1e-3;
};

struct FitResult {
  std::vector<std::string> names;
  Eigen::VectorXd parameters;
  Eigen::VectorXd standard_errors;  // NaN where not identifiable
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;

  /// Throws IndexOutOfRange for an unknown name.
  double value(std::string_view name) const;
  double error(std::string_view name) const;
};

/// Levenberg-Marquardt with a forward-difference Jacobian, Marquardt
/// diagonal scaling and projection onto the box `bounds`.
///
/// Parameters should be scaled to order unity by the caller. Hitting the
/// iteration cap is reported through `converged = false`, not thrown.
/// Throws InvalidArgument for a start outside the box or too few residuals,
/// SingularJacobian when the initial Jacobian is zero or not finite.
FitResult least_squares_fit(const ResidualFunction& residuals, const Eigen::VectorXd& init,
                            const ParameterBounds& bounds, std::vector<std::string> names,
                            const LeastSquaresOptions& options = {});

/// Forward-difference Jacobian used by the solver; steps backwards at an
/// upper bound.
Eigen::MatrixXd forward_difference_jacobian(const ResidualFunction& residuals, const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& r0, const ParameterBounds& bounds);

}  // namespace jjal
