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

#include "jjal/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "jjal/errors.hpp"

namespace jjal {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::VectorXd clamp_to(const Eigen::VectorXd& x, const ParameterBounds& b) {
  return x.cwiseMax(b.lower).cwiseMin(b.upper);
}

double half_cost(const Eigen::VectorXd& r) { return 0.5 * r.squaredNorm(); }

}  // namespace

ParameterBounds ParameterBounds::unbounded(Eigen::Index n) {
  const double inf = std::numeric_limits<double>::infinity();
  return {Eigen::VectorXd::Constant(n, -inf), Eigen::VectorXd::Constant(n, inf)};
}

double FitResult::value(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return parameters(static_cast<Eigen::Index>(i));
  }
  throw Error(ErrorCode::IndexOutOfRange, fmt::format("no fit parameter named '{}'", name));
}

double FitResult::error(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return standard_errors(static_cast<Eigen::Index>(i));
  }
  throw Error(ErrorCode::IndexOutOfRange, fmt::format("no fit parameter named '{}'", name));
}

Eigen::MatrixXd forward_difference_jacobian(const ResidualFunction& residuals, const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& r0, const ParameterBounds& bounds) {
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  Eigen::MatrixXd jac(r0.size(), x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    double h = root_eps * std::max(std::abs(x(j)), 1e-3);
    if (x(j) + h > bounds.upper(j)) h = -h;
    xp(j) = x(j) + h;
    const Eigen::VectorXd rp = residuals(xp);
    if (rp.size() != r0.size()) {
      throw Error(ErrorCode::InvalidArgument, "residual length changed between evaluations");
    }
    jac.col(j) = (rp - r0) / (xp(j) - x(j));
    xp(j) = x(j);
  }
  return jac;
}

FitResult least_squares_fit(const ResidualFunction& residuals, const Eigen::VectorXd& init,
                            const ParameterBounds& bounds, std::vector<std::string> names,
                            const LeastSquaresOptions& options) {
  const Eigen::Index n = init.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "no parameters to fit");
  if (bounds.lower.size() != n || bounds.upper.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "bounds do not match the parameter count");
  }
  if (static_cast<Eigen::Index>(names.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "parameter names do not match the parameter count");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(init(j) >= bounds.lower(j) && init(j) <= bounds.upper(j))) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("initial value of '{}' ({:.6g}) lies outside its bounds", names[j], init(j)));
    }
  }

  FitResult out;
  out.names = std::move(names);

  Eigen::VectorXd x = init;
  Eigen::VectorXd r = residuals(x);
  const Eigen::Index m = r.size();
  if (m < n) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("{} residuals cannot determine {} parameters", m, n));
  }
  if (!r.allFinite()) throw Error(ErrorCode::InvalidArgument, "residuals are not finite at the start point");

  double cost = half_cost(r);
  Eigen::MatrixXd jac = forward_difference_jacobian(residuals, x, r, bounds);
  if (!jac.allFinite() || jac.isZero(0.0)) {
    throw Error(ErrorCode::SingularJacobian, "Jacobian at the start point is zero or not finite");
  }

  const double tiny_cost = 0.5 * static_cast<double>(m) * 1e-30;
  double lambda = options.initial_damping;
  double nu = 2.0;
  bool converged = false;
  int iter = 0;

  for (; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (cost <= tiny_cost || grad.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      converged = true;
      break;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd diag = jtj.diagonal().cwiseMax(1e-12 * jtj.diagonal().maxCoeff());

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += lambda * diag;
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      const Eigen::VectorXd x_new = clamp_to(x + step, bounds);
      const Eigen::VectorXd actual = x_new - x;
      const Eigen::VectorXd r_new = residuals(x_new);
      const double cost_new = r_new.allFinite() ? half_cost(r_new) : std::numeric_limits<double>::infinity();

      // Gain ratio against the linear model of the projected step.
      const double predicted = -(grad.dot(actual) + 0.5 * actual.dot(jtj * actual));
      const double rho = predicted > 0.0 ? (cost - cost_new) / predicted : -1.0;

      if (cost_new < cost && rho > 0.0) {
        const double rel = (cost - cost_new) / cost;
        x = x_new;
        r = r_new;
        cost = cost_new;
        lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        accepted = true;
        jac = forward_difference_jacobian(residuals, x, r, bounds);
        if (rel < options.cost_tolerance) converged = true;
      } else {
        lambda *= nu;
        nu *= 2.0;
        if (lambda > 1e16 || actual.norm() <= 1e-15 * (x.norm() + 1e-15)) {
          // No descent left at machine precision: a stationary point.
          converged = true;
          break;
        }
      }
    }
    if (converged) {
      ++iter;
      break;
    }
  }

  out.parameters = x;
  out.iterations = iter;
  out.converged = converged;
  out.residual_rms = std::sqrt(2.0 * cost / static_cast<double>(m));
  if (!converged) {
    out.warnings.push_back(fmt::format("MaxIterations: stopped after {} iterations", iter));
  }

  // Residual-scaled covariance, s^2 (J^T J)^{-1}.
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  const bool full_rank = sv(sv.size() - 1) > 1e-10 * sv(0) && sv(0) > 0.0;
  out.standard_errors = Eigen::VectorXd::Constant(n, kNaN);
  if (full_rank) {
    const double dof = static_cast<double>(std::max<Eigen::Index>(m - n, 1));
    const double s2 = 2.0 * cost / dof;
    const Eigen::MatrixXd cov = s2 * jtj.inverse();
    out.standard_errors = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  } else {
    out.warnings.push_back("Jacobian is rank deficient; standard errors unavailable");
  }
  return out;
}

}  // namespace jjal
