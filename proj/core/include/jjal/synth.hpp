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

#include <cstdint>
#include <utility>
#include <vector>

#include "jjal/fits.hpp"
#include "jjal/readout.hpp"
#include "jjal/scattering.hpp"

namespace jjal {

// Seeded generators for test fixtures and the `synth` verb. Each uses its
// own std::mt19937_64, so a (parameters, seed) pair fixes the output.

struct TelegraphTrace {
  std::vector<int> truth;   // 0 = g, 1 = e
  std::vector<double> q;    // signal samples
  double sample_period = 0.0;  // s
};

/// Two-state Markov chain with per-sample flip probabilities, Gaussian
/// readout noise of width `sigma` around `means[0..1]`.
TelegraphTrace synth_telegraph(std::size_t samples, double mean_g, double mean_e, double sigma, double p_up,
                               double p_down, double sample_period, std::uint64_t seed);

struct CalibratedJumpConfig {
  double sigma = 2.0;             // sqrt(photons)
  double target_fidelity = 0.90;  // single-sample threshold fidelity
  double t1 = 8.8e-6;             // s
  double sample_period = 0.5e-6;  // s, one integration window
  double population_ratio = 12.0; // N_g / N_e in steady state
  std::size_t samples = 200000;
};

/// Mean separation at which a mid-point threshold on one Gaussian sample of
/// width sigma reaches fidelity F: 2 sqrt(2) sigma erfinv(F).
double calibrated_separation(double sigma, double fidelity);

/// Quantum-jump record whose g/e separation follows from the target
/// fidelity; decay rate 1/T1, excitation rate set by the population ratio.
TelegraphTrace synth_calibrated_jumps(const CalibratedJumpConfig& config, std::uint64_t seed);

/// Ideal over-coupled resonator, optional Gaussian noise on re and im.
ComplexTrace synth_resonance(double f0_hz, double kappa_hz, const std::vector<double>& grid, double noise,
                             std::uint64_t seed);

ComplexTrace synth_dimer(const DimerFitParams& p, const std::vector<double>& grid, double noise, std::uint64_t seed);

std::vector<FluxSample> synth_flux_map(const FluxFitParams& p, double i_min, double i_max, std::size_t points,
                                       double noise_hz, std::uint64_t seed);

struct RamseyComponent {
  double amplitude;
  double frequency;  // Hz
  double phase;      // rad
};

std::vector<RamseySample> synth_ramsey(const std::vector<RamseyComponent>& components, double t2, double offset,
                                       double t_max, std::size_t points, double noise, std::uint64_t seed);

/// Lobe with the given gain and sqrt(G0) B fixed to `product_hz`.
GainLobe constant_product_lobe(double gain_db, double product_hz, double center_hz);

std::vector<GainSample> synth_gain(const std::vector<GainLobe>& lobes, const std::vector<double>& grid,
                                   double noise_db, std::uint64_t seed);

/// Pump-off floor with +-ripple_db seeded ripple; pump-on adds a Lorentzian
/// bump of `bump_db` (in dB at the center) of FWHM `width_hz`.
std::pair<std::vector<SpectrumSample>, std::vector<SpectrumSample>> synth_noise_spectra(
    const std::vector<double>& grid, double floor_dbm, double bump_db, double center_hz, double width_hz,
    double ripple_db, std::uint64_t seed);

}  // namespace jjal
