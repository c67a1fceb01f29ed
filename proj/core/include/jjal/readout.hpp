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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jjal/least_squares.hpp"

namespace jjal {

/// n_r (kappa + gamma)^2 / (4 kappa) T_m. Rates in rad/s, T_m in s.
/// Throws ZeroKappa when kappa <= 0, InvalidArgument for negative inputs.
double measurement_photon_number(double mean_photons, double kappa, double gamma, double integration_time);

/// Photons per microsecond carried by a tone of `power_dbm` at `frequency_hz`.
double power_to_photon_flux(double power_dbm, double frequency_hz);

/// 0.5 / sigma^2, sigma in sqrt(photons).
double measurement_efficiency(double sigma);

/// Efficiency of the amplifier alone given a lossy chain with transmission eta_l.
double amplifier_efficiency_bound(double efficiency, double line_efficiency = 0.5);

/// 4 arctan(chi / kappa), radians.
double pointer_angle(double chi, double kappa);

struct StarkPoint {
  double drive_amplitude_squared;
  double ramsey_frequency;  // Hz
};

struct StarkCalibration {
  double slope = 0.0;                 // photons per amplitude^2
  std::vector<double> photon_numbers; // per point
  std::vector<double> residuals;      // photons
  double r_squared = 0.0;             // origin-constrained
  std::vector<std::string> warnings;
};

/// n_i = |f_R,i - f_R0| 2pi / chi, then n = slope * amp^2 through the origin.
/// Adds "NonlinearityWarning" when R^2 < 0.98. Throws InsufficientData
/// (< 3 points), InvalidArgument (chi <= 0).
StarkCalibration stark_photon_calibration(const std::vector<StarkPoint>& points, double f_r0, double chi);

enum class RamseyMode { Single, Double };

struct RamseySample {
  double delay;  // s
  double signal;
};

/// Single: A e^{-t/T2} cos(2 pi f t + phi) + offset.
/// Double: e^{-t/T2} [A1 cos(2 pi f1 t + phi1) + A2 cos(2 pi f2 t + phi2)] + offset.
/// Parameter names: amplitude, t2_us, f_mhz, phase_rad, offset (single);
/// amplitude1, f1_mhz, phase1_rad, amplitude2, f2_mhz, phase2_rad, t2_us,
/// offset (double). Adds "T2Unidentifiable" when the amplitude is not
/// resolved from zero.
FitResult ramsey_fit(const std::vector<RamseySample>& trace, RamseyMode mode);

double ramsey_model(const FitResult& fit, RamseyMode mode, double delay);

/// Two states: (E1 - E0) / (kB ln(N0/N1)). More states: slope of ln(N_k/N0)
/// against -(E_k - E0)/kB through the origin. Energies in J.
/// Throws InvertedPopulation when the populations do not decrease.
double qubit_temperature(const std::vector<double>& populations, const std::vector<double>& energies);

/// Population ratio N0/N1 that a two-level system at temperature `t` shows.
double boltzmann_ratio(double energy_gap, double temperature);

struct GaussianMixture {
  std::vector<double> weights;
  std::vector<Eigen::Vector2d> means;
  double sigma = 0.0;  // shared isotropic width
  int iterations = 0;
  bool converged = false;
};

/// EM fit of `components` isotropic Gaussians with a shared width to IQ
/// points. Means start at quantiles along the axis of largest spread.
GaussianMixture fit_gaussian_mixture(const std::vector<Eigen::Vector2d>& points, int components,
                                     int max_iterations = 500);

}  // namespace jjal
