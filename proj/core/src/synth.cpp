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

#include "jjal/synth.hpp"

#include <cmath>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

TelegraphTrace synth_telegraph(std::size_t samples, double mean_g, double mean_e, double sigma, double p_up,
                               double p_down, double sample_period, std::uint64_t seed) {
  if (!(p_up >= 0.0 && p_up <= 1.0 && p_down >= 0.0 && p_down <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "flip probabilities must lie in [0, 1]");
  }
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  TelegraphTrace t;
  t.sample_period = sample_period;
  t.truth.resize(samples);
  t.q.resize(samples);
  const double p_excited = p_up + p_down > 0.0 ? p_up / (p_up + p_down) : 0.0;
  int state = uniform(rng) < p_excited ? 1 : 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (i > 0 && uniform(rng) < (state == 0 ? p_up : p_down)) state = 1 - state;
    t.truth[i] = state;
    t.q[i] = (state == 0 ? mean_g : mean_e) + sigma * noise(rng);
  }
  return t;
}

double calibrated_separation(double sigma, double fidelity) {
  if (!(fidelity > 0.0 && fidelity < 1.0)) throw Error(ErrorCode::InvalidArgument, "fidelity must lie in (0, 1)");
  return 2.0 * std::sqrt(2.0) * sigma * boost::math::erf_inv(fidelity);
}

TelegraphTrace synth_calibrated_jumps(const CalibratedJumpConfig& c, std::uint64_t seed) {
  if (!(c.t1 > 0.0) || !(c.sample_period > 0.0) || !(c.population_ratio > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "T1, sample period and population ratio must be positive");
  }
  const double p_down = c.sample_period / c.t1;
  const double p_up = p_down / c.population_ratio;
  return synth_telegraph(c.samples, 0.0, calibrated_separation(c.sigma, c.target_fidelity), c.sigma, p_up, p_down,
                         c.sample_period, seed);
}

namespace {

ComplexTrace with_noise(ComplexTrace t, double noise, std::uint64_t seed) {
  if (noise > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, noise);
    for (auto& v : t.values) {
      const double re = n(rng);
      const double im = n(rng);
      v += Complex{re, im};
    }
  }
  return t;
}

}  // namespace

ComplexTrace synth_resonance(double f0_hz, double kappa_hz, const std::vector<double>& grid, double noise,
                             std::uint64_t seed) {
  ComplexTrace t;
  t.frequencies = grid;
  for (double f : grid) t.values.push_back(resonator_reflection(kTwoPi * f, kTwoPi * f0_hz, kTwoPi * kappa_hz, 0.0));
  t.validate();
  return with_noise(std::move(t), noise, seed);
}

ComplexTrace synth_dimer(const DimerFitParams& p, const std::vector<double>& grid, double noise, std::uint64_t seed) {
  ComplexTrace t;
  t.frequencies = grid;
  for (double f : grid) t.values.push_back(dimer_reflection(p, kTwoPi * f));
  t.validate();
  return with_noise(std::move(t), noise, seed);
}

std::vector<FluxSample> synth_flux_map(const FluxFitParams& p, double i_min, double i_max, std::size_t points,
                                       double noise_hz, std::uint64_t seed) {
  if (points < 2 || !(i_max > i_min)) throw Error(ErrorCode::InvalidArgument, "need >= 2 points over i_min < i_max");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<FluxSample> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double current = i_min + (i_max - i_min) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double draw = n(rng);
    out.push_back({current, flux_model(p, current) + noise_hz * draw});
  }
  return out;
}

std::vector<RamseySample> synth_ramsey(const std::vector<RamseyComponent>& components, double t2, double offset,
                                       double t_max, std::size_t points, double noise, std::uint64_t seed) {
  if (points < 2 || !(t_max > 0.0) || !(t2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "bad Ramsey generator");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<RamseySample> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    double s = 0.0;
    for (const auto& c : components) s += c.amplitude * std::cos(kTwoPi * c.frequency * t + c.phase);
    const double draw = n(rng);
    out.push_back({t, std::exp(-t / t2) * s + offset + noise * draw});
  }
  return out;
}

GainLobe constant_product_lobe(double gain_db, double product_hz, double center_hz) {
  GainLobe l;
  l.gain_db = gain_db;
  l.center = center_hz;
  l.bandwidth = product_hz / std::pow(10.0, gain_db / 20.0);
  l.gain_bandwidth = product_hz;
  return l;
}

std::vector<GainSample> synth_gain(const std::vector<GainLobe>& lobes, const std::vector<double>& grid,
                                   double noise_db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<GainSample> out;
  out.reserve(grid.size());
  for (double f : grid) {
    const double draw = n(rng);
    out.push_back({f, 10.0 * std::log10(gain_model(lobes, f)) + noise_db * draw});
  }
  return out;
}

std::pair<std::vector<SpectrumSample>, std::vector<SpectrumSample>> synth_noise_spectra(
    const std::vector<double>& grid, double floor_dbm, double bump_db, double center_hz, double width_hz,
    double ripple_db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ripple(-ripple_db, ripple_db);
  std::vector<SpectrumSample> on;
  std::vector<SpectrumSample> off;
  for (double f : grid) {
    const double x = 2.0 * (f - center_hz) / width_hz;
    const double r = ripple_db > 0.0 ? ripple(rng) : 0.0;
    on.push_back({f, floor_dbm + bump_db / (1.0 + x * x)});
    off.push_back({f, floor_dbm + r});
  }
  return {std::move(on), std::move(off)};
}

}  // namespace jjal
