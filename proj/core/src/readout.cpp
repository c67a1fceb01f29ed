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

#include "jjal/readout.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

namespace {

constexpr double kPi = std::numbers::pi;

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, fmt::format("{} must be >= 0 (got {})", name, v));
}

}  // namespace

double measurement_photon_number(double mean_photons, double kappa, double gamma, double integration_time) {
  require_non_negative(mean_photons, "mean photon number");
  require_non_negative(gamma, "internal decay rate");
  require_non_negative(integration_time, "integration time");
  if (!(kappa > 0.0)) throw Error(ErrorCode::ZeroKappa, "external decay rate must be positive");
  const double total = kappa + gamma;
  return mean_photons * total * total / (4.0 * kappa) * integration_time;
}

double power_to_photon_flux(double power_dbm, double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "frequency must be positive");
  const double watts = std::pow(10.0, (power_dbm - 30.0) / 10.0);
  return watts / (PhysicalConstants::planck * frequency_hz) * 1e-6;
}

double measurement_efficiency(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  return 0.5 / (sigma * sigma);
}

double amplifier_efficiency_bound(double efficiency, double line_efficiency) {
  if (!(line_efficiency > 0.0)) throw Error(ErrorCode::InvalidArgument, "line efficiency must be positive");
  return efficiency / line_efficiency;
}

double pointer_angle(double chi, double kappa) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::ZeroKappa, "kappa must be positive");
  return 4.0 * std::atan(chi / kappa);
}

StarkCalibration stark_photon_calibration(const std::vector<StarkPoint>& points, double f_r0, double chi) {
  if (points.size() < 3) {
    throw Error(ErrorCode::InsufficientData, fmt::format("Stark calibration needs >= 3 points, got {}", points.size()));
  }
  if (!(chi > 0.0)) throw Error(ErrorCode::InvalidArgument, "chi must be positive");

  StarkCalibration out;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double n = std::abs(p.ramsey_frequency - f_r0) * kTwoPi / chi;
    out.photon_numbers.push_back(n);
    sxy += p.drive_amplitude_squared * n;
    sxx += p.drive_amplitude_squared * p.drive_amplitude_squared;
    syy += n * n;
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "all drive amplitudes are zero");
  out.slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = out.photon_numbers[i] - out.slope * points[i].drive_amplitude_squared;
    out.residuals.push_back(r);
    ss_res += r * r;
  }
  out.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  if (out.r_squared < 0.98) {
    out.warnings.push_back(fmt::format("NonlinearityWarning: R^2 = {:.4f} below 0.98", out.r_squared));
  }
  return out;
}

namespace {

struct Line {
  double frequency;  // MHz
  double amplitude;
  double phase;
  double power;
};

// Direct periodogram of the mean-removed signal; t in microseconds.
std::vector<Line> periodogram_lines(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  const double span = t.back() - t.front();
  double dt_min = span;
  for (std::size_t i = 1; i < n; ++i) dt_min = std::min(dt_min, t[i] - t[i - 1]);
  const double f_lo = 0.5 / span;
  const double f_hi = 0.5 / dt_min;
  const int count = std::clamp(static_cast<int>(8.0 * (f_hi - f_lo) * span), 64, 20000);

  std::vector<Line> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double f = f_lo + (f_hi - f_lo) * k / (count - 1);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += (y[i] - mean) * std::polar(1.0, -2.0 * kPi * f * t[i]);
    grid.push_back({f, 2.0 * std::abs(acc) / static_cast<double>(n), std::arg(acc), std::norm(acc)});
  }
  std::vector<Line> peaks;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    if (grid[k].power >= grid[k - 1].power && grid[k].power > grid[k + 1].power) peaks.push_back(grid[k]);
  }
  if (peaks.empty()) peaks.push_back(*std::max_element(grid.begin(), grid.end(),
                                                       [](const Line& a, const Line& b) { return a.power < b.power; }));
  std::sort(peaks.begin(), peaks.end(), [](const Line& a, const Line& b) { return a.power > b.power; });
  return peaks;
}

double ramsey_eval(const Eigen::VectorXd& q, RamseyMode mode, double t_us) {
  if (mode == RamseyMode::Single) {
    return q(0) * std::exp(-t_us / q(1)) * std::cos(2.0 * kPi * q(2) * t_us + q(3)) + q(4);
  }
  const double env = std::exp(-t_us / q(6));
  return env * (q(0) * std::cos(2.0 * kPi * q(1) * t_us + q(2)) + q(3) * std::cos(2.0 * kPi * q(4) * t_us + q(5))) +
         q(7);
}

}  // namespace

double ramsey_model(const FitResult& fit, RamseyMode mode, double delay) {
  return ramsey_eval(fit.parameters, mode, delay * 1e6);
}

FitResult ramsey_fit(const std::vector<RamseySample>& trace, RamseyMode mode) {
  const std::size_t n_par = mode == RamseyMode::Single ? 5 : 8;
  if (trace.size() <= n_par) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("Ramsey fit needs > {} samples, got {}", n_par, trace.size()));
  }
  std::vector<double> t;
  std::vector<double> y;
  for (const auto& s : trace) {
    t.push_back(s.delay * 1e6);
    y.push_back(s.signal);
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw Error(ErrorCode::InvalidArgument, "Ramsey delays must increase");
  }
  const double span = t.back() - t.front();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());

  const auto lines = periodogram_lines(t, y);
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd q0(static_cast<Eigen::Index>(n_par));
  ParameterBounds bounds = ParameterBounds::unbounded(q0.size());
  std::vector<std::string> names;
  const double t2_seed = span / 3.0;
  // The periodogram amplitude is damped by the envelope; undo its mean.
  const double damping = t2_seed / span * (1.0 - std::exp(-span / t2_seed));

  if (mode == RamseyMode::Single) {
    const Line& l = lines.front();
    q0 << l.amplitude / damping, t2_seed, l.frequency, l.phase, mean;
    bounds.lower(0) = 0.0;
    bounds.lower(1) = 1e-6;
    bounds.upper(1) = inf;
    bounds.lower(2) = 0.0;
    names = {"amplitude", "t2_us", "f_mhz", "phase_rad", "offset"};
  } else {
    Line a = lines.front();
    Line b = lines.size() > 1 ? lines[1] : Line{a.frequency * 1.1, 0.5 * a.amplitude, a.phase, 0.0};
    if (a.frequency > b.frequency) std::swap(a, b);
    q0 << a.amplitude / damping, a.frequency, a.phase, b.amplitude / damping, b.frequency, b.phase, t2_seed, mean;
    bounds.lower(0) = 0.0;
    bounds.lower(3) = 0.0;
    bounds.lower(1) = 0.0;
    bounds.lower(4) = 0.0;
    bounds.lower(6) = 1e-6;
    names = {"amplitude1", "f1_mhz", "phase1_rad", "amplitude2", "f2_mhz", "phase2_rad", "t2_us", "offset"};
  }

  const auto m = static_cast<Eigen::Index>(t.size());
  auto residuals = [&](const Eigen::VectorXd& q) {
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      r(i) = ramsey_eval(q, mode, t[static_cast<std::size_t>(i)]) - y[static_cast<std::size_t>(i)];
    }
    return r;
  };
  FitResult fit = least_squares_fit(residuals, q0, bounds, std::move(names));

  const double period = 1.0 / std::max(mode == RamseyMode::Single ? fit.parameters(2) : fit.parameters(1), 1e-300);
  if (span < 2.0 * period) fit.warnings.push_back("trace spans fewer than two oscillation periods");

  const Eigen::Index amp = 0;
  const double a = fit.parameters(amp);
  const double se = fit.standard_errors(amp);
  if (!std::isfinite(se) || a < 3.0 * se) {
    fit.warnings.push_back("T2Unidentifiable: oscillation amplitude not resolved from zero");
  }
  return fit;
}

double boltzmann_ratio(double energy_gap, double temperature) {
  if (!(temperature > 0.0)) throw Error(ErrorCode::InvalidArgument, "temperature must be positive");
  return std::exp(energy_gap / (PhysicalConstants::boltzmann * temperature));
}

double qubit_temperature(const std::vector<double>& populations, const std::vector<double>& energies) {
  if (populations.size() < 2 || populations.size() != energies.size()) {
    throw Error(ErrorCode::InvalidArgument, "need >= 2 populations with one energy each");
  }
  for (double p : populations) require_non_negative(p, "population");
  const double n0 = populations[0];
  const double kb = PhysicalConstants::boltzmann;

  if (populations.size() == 2) {
    if (!(populations[1] < n0)) {
      throw Error(ErrorCode::InvertedPopulation, "excited population is not below the ground population");
    }
    const double gap = energies[1] - energies[0];
    if (populations[1] == 0.0) return 0.0;
    return gap / (kb * std::log(n0 / populations[1]));
  }

  // ln(N_k/N_0) = beta * x_k with x_k = -(E_k - E_0)/kB.
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 1; k < populations.size(); ++k) {
    if (!(populations[k] > 0.0) || !(n0 > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "multi-state fit needs strictly positive populations");
    }
    const double x = -(energies[k] - energies[0]) / kb;
    sxy += x * std::log(populations[k] / n0);
    sxx += x * x;
  }
  const double beta = sxy / sxx;
  if (!(beta > 0.0)) throw Error(ErrorCode::InvertedPopulation, "populations do not decrease with energy");
  return 1.0 / beta;
}

GaussianMixture fit_gaussian_mixture(const std::vector<Eigen::Vector2d>& points, int components, int max_iterations) {
  if (components < 1 || components > 4) throw Error(ErrorCode::InvalidArgument, "1 to 4 mixture components");
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 2 * components) throw Error(ErrorCode::InsufficientData, "too few points for the mixture");

  Eigen::MatrixXd x(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = points[static_cast<std::size_t>(i)].transpose();
  const Eigen::RowVector2d centroid = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - centroid;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(centered.transpose() * centered / static_cast<double>(n));
  const Eigen::Vector2d axis = es.eigenvectors().col(1);

  std::vector<double> proj(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) proj[static_cast<std::size_t>(i)] = centered.row(i).dot(axis);
  std::vector<double> sorted = proj;
  std::sort(sorted.begin(), sorted.end());

  GaussianMixture g;
  const int k = components;
  for (int c = 0; c < k; ++c) {
    const double qv = sorted[static_cast<std::size_t>((2 * c + 1) * (n - 1) / (2 * k))];
    g.means.push_back(centroid.transpose() + qv * axis);
    g.weights.push_back(1.0 / k);
  }
  g.sigma = std::sqrt(std::max(es.eigenvalues()(0), 1e-12 * es.eigenvalues()(1)));
  if (!(g.sigma > 0.0)) g.sigma = 1.0;

  Eigen::MatrixXd resp(n, k);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (g.iterations = 1; g.iterations <= max_iterations; ++g.iterations) {
    // E step in log space.
    double ll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double top = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d2 = (x.row(i).transpose() - g.means[static_cast<std::size_t>(c)]).squaredNorm();
        resp(i, c) = std::log(g.weights[static_cast<std::size_t>(c)]) - d2 / (2.0 * g.sigma * g.sigma) -
                     2.0 * std::log(g.sigma);
        top = std::max(top, resp(i, c));
      }
      double sum = 0.0;
      for (int c = 0; c < k; ++c) sum += std::exp(resp(i, c) - top);
      for (int c = 0; c < k; ++c) resp(i, c) = std::exp(resp(i, c) - top) / sum;
      ll += top + std::log(sum);
    }
    // M step.
    double ss = 0.0;
    for (int c = 0; c < k; ++c) {
      const double nk = resp.col(c).sum();
      const auto cs = static_cast<std::size_t>(c);
      g.weights[cs] = std::max(nk / static_cast<double>(n), 1e-12);
      if (nk > 0.0) g.means[cs] = (x.transpose() * resp.col(c)) / nk;
      for (Eigen::Index i = 0; i < n; ++i) {
        ss += resp(i, c) * (x.row(i).transpose() - g.means[cs]).squaredNorm();
      }
    }
    g.sigma = std::sqrt(std::max(ss / (2.0 * static_cast<double>(n)), 1e-300));
    if (std::abs(ll - prev_ll) <= 1e-10 * std::abs(ll)) {
      g.converged = true;
      break;
    }
    prev_ll = ll;
  }
  g.iterations = std::min(g.iterations, max_iterations);
  return g;
}

}  // namespace jjal
