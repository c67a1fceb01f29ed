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

#include <optional>
#include <vector>

#include "jjal/least_squares.hpp"
#include "jjal/scattering.hpp"

namespace jjal {

// ---- flux modulation -------------------------------------------------------

struct FluxFitParams {
  double f0 = 0.0;              // Hz
  double gamma_l = 1.0;         // participation ratio, (0, 1]
  double lb = 0.0;              // flux quanta per ampere
  double current_offset = 0.0;  // A
};

/// f0 / sqrt(1 - gamma_L + gamma_L / |cos(pi lb (I + I_offset))|).
/// Equals f0 at I = -I_offset for every gamma_L.
double flux_model(const FluxFitParams& p, double bias_current);

struct FluxSample {
  double bias_current;  // A
  double frequency;     // Hz
};

struct FluxFit {
  FitResult fit;  // parameters f0_ghz, gamma_l, lb_per_a, offset_ma
  FluxFitParams params;
  bool identifiable = true;  // false: data span below half a flux period
};

/// Five-start fit (seed plus four perturbations); the lowest residual wins,
/// ties go to the smallest |I_offset|. Without `init`, lb is seeded from the
/// periodogram of f(I) and I_offset from the highest-frequency sample.
/// Adds an "IdentifiabilityWarning" when the data span less than half a period.
FluxFit fit_flux_modulation(const std::vector<FluxSample>& data, std::optional<FluxFitParams> init = {});

// ---- dimer reflection ------------------------------------------------------

struct DimerFitParams {
  double omega_plus = 0.0;   // rad/s
  double omega_minus = 0.0;  // rad/s
  double kappa_plus = 0.0;   // rad/s
  double kappa_minus = 0.0;  // rad/s
  double gamma_plus = 0.0;   // rad/s
  double gamma_minus = 0.0;  // rad/s
  double phase = 0.0;        // rad
  // derived
  double coupling = 0.0;  // J, rad/s
  double omega_1 = 0.0;   // rad/s
  double omega_2 = 0.0;   // rad/s
  double asymmetry = 0.0; // A, rad^2/s^2
};

/// Single-port resonator reflection, engineering convention (the complex
/// conjugate of the e^{-i w t} expression):
///   -1 + [k(k+g)/2 - j k (w - wm)] / [(w - wm)^2 + (k+g)^2/4].
Complex resonator_reflection(double omega, double omega_m, double kappa, double gamma);

/// Gamma_+ Gamma_- e^{-j phase}.
Complex dimer_reflection(const DimerFitParams& p, double omega);

struct DimerAsymmetry {
  double asymmetry = 0.0;  // A = (w1 - w2)^2
  double omega_1 = 0.0;
  double omega_2 = 0.0;
  double coupling = 0.0;   // J
};

/// A = (k+ - k-)^2 (w+ - w-)^2 / (k+ + k-)^2. The signed detuning
/// w1 - w2 = (w+ - w-)(k+ - k-)/(k+ + k-) has magnitude sqrt(A), so
/// w1,2 = midpoint +- sqrt(A)/2 when k+ > k-. J from
/// (w+ - w-)^2 = (w1 - w2)^2 + 4 J^2. Throws InvalidArgument.
DimerAsymmetry dimer_asymmetry(double omega_plus, double omega_minus, double kappa_plus, double kappa_minus);

struct DimerModes {
  double omega_plus, omega_minus, kappa_plus, kappa_minus;
};

/// Coupled-oscillator forward map: (w1, w2, J, kappa) -> (w+-, kappa+-).
DimerModes dimer_forward(double omega_1, double omega_2, double coupling, double kappa_total);

struct DimerFit {
  FitResult fit;  // f_plus_ghz, f_minus_ghz, kappa_plus_ghz, ... (all /2pi), phase
  DimerFitParams params;
};

/// Seeds from extract_resonances when `init` is absent.
/// Throws InsufficientData for fewer than 8 points.
DimerFit fit_dimer_reflection(const ComplexTrace& trace, std::optional<DimerFitParams> init = {});

// ---- gain lobes -----------------------------------------------------------

struct GainSample {
  double frequency;  // Hz
  double gain_db;
};

struct GainLobe {
  double gain_db = 0.0;    // G0
  double center = 0.0;     // Hz
  double bandwidth = 0.0;  // FWHM, Hz
  double gain_bandwidth = 0.0;  // sqrt(G0 linear) * B, Hz
};

/// sqrt(10^(G0_dB/10)) * B.
double gain_bandwidth_product(double gain_db, double bandwidth_hz);

/// Linear power gain 1 + sum_k (G_k - 1) / (1 + (2 (f - f_k) / B_k)^2).
double gain_model(const std::vector<GainLobe>& lobes, double frequency);

struct GainFit {
  FitResult fit;
  std::vector<GainLobe> lobes;  // ascending in center frequency
};

/// Fits one or two lobes rising above 3 dB. Throws NoLobeFound.
GainFit fit_gain_profile(const std::vector<GainSample>& trace);

// ---- noise visibility -----------------------------------------------------

struct SpectrumSample {
  double frequency;    // Hz
  double density_dbm;  // dBm/Hz
};

struct NoiseVisibility {
  std::vector<double> frequencies;  // Hz
  std::vector<double> visibility;   // dB
  double max_visibility = 0.0;      // dB
  double max_frequency = 0.0;       // Hz
};

/// Pointwise pump-on minus pump-off in dB. Throws GridMismatch, EmptyGrid.
NoiseVisibility noise_visibility(const std::vector<SpectrumSample>& pump_on,
                                 const std::vector<SpectrumSample>& pump_off);

}  // namespace jjal
