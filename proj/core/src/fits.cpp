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

#include "jjal/fits.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGHz = 1e9;

}  // namespace

// ---- flux modulation -------------------------------------------------------

double flux_model(const FluxFitParams& p, double bias_current) {
  const double c = std::abs(std::cos(kPi * p.lb * (bias_current + p.current_offset)));
  return p.f0 / std::sqrt(1.0 - p.gamma_l + p.gamma_l / c);
}

namespace {

// Period of f(I) from the strongest line of a direct periodogram.
double periodogram_lb(const std::vector<FluxSample>& data) {
  double lo = data.front().bias_current;
  double hi = lo;
  double mean = 0.0;
  for (const auto& s : data) {
    lo = std::min(lo, s.bias_current);
    hi = std::max(hi, s.bias_current);
    mean += s.frequency;
  }
  mean /= static_cast<double>(data.size());
  const double span = hi - lo;
  const double p_min = 4.0 * span / static_cast<double>(data.size());
  const double p_max = 4.0 * span;

  double best_power = -1.0;
  double best_period = p_max;
  constexpr int kCandidates = 600;
  for (int i = 0; i < kCandidates; ++i) {
    const double period = p_min * std::pow(p_max / p_min, static_cast<double>(i) / (kCandidates - 1));
    std::complex<double> acc{0.0, 0.0};
    for (const auto& s : data) {
      acc += (s.frequency - mean) * std::polar(1.0, -2.0 * kPi * s.bias_current / period);
    }
    const double power = std::norm(acc);
    if (power > best_power) {
      best_power = power;
      best_period = period;
    }
  }
  return 1.0 / best_period;
}

FitResult run_flux_fit(const std::vector<FluxSample>& data, const FluxFitParams& seed) {
  const auto m = static_cast<Eigen::Index>(data.size());
  Eigen::VectorXd current(m);
  Eigen::VectorXd freq(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    current(i) = data[static_cast<std::size_t>(i)].bias_current;
    freq(i) = data[static_cast<std::size_t>(i)].frequency / kGHz;
  }
  auto residuals = [&](const Eigen::VectorXd& q) {
    const FluxFitParams p{q(0), q(1), q(2), q(3) * 1e-3};
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) r(i) = flux_model(p, current(i)) - freq(i);
    return r;
  };
  Eigen::VectorXd init(4);
  init << seed.f0 / kGHz, seed.gamma_l, seed.lb, seed.current_offset * 1e3;
  ParameterBounds bounds = ParameterBounds::unbounded(4);
  bounds.lower(0) = 1e-9;
  bounds.lower(1) = 1e-6;
  bounds.upper(1) = 1.0;
  bounds.lower(2) = 1e-12;
  init = init.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
  return least_squares_fit(residuals, init, bounds, {"f0_ghz", "gamma_l", "lb_per_a", "offset_ma"});
}

}  // namespace

FluxFit fit_flux_modulation(const std::vector<FluxSample>& data, std::optional<FluxFitParams> init) {
  if (data.size() < 5) {
    throw Error(ErrorCode::InsufficientData, fmt::format("flux fit needs >= 5 samples, got {}", data.size()));
  }
  FluxFitParams seed;
  if (init) {
    seed = *init;
  } else {
    const auto top = std::max_element(data.begin(), data.end(),
                                      [](const FluxSample& a, const FluxSample& b) { return a.frequency < b.frequency; });
    seed.f0 = top->frequency;
    seed.current_offset = -top->bias_current;
    seed.lb = periodogram_lb(data);
    // gamma_L from the deepest sample under the seeded period.
    double c_min = 1.0;
    double f_min = top->frequency;
    for (const auto& s : data) {
      const double c = std::abs(std::cos(kPi * seed.lb * (s.bias_current + seed.current_offset)));
      if (s.frequency < f_min) {
        f_min = s.frequency;
        c_min = c;
      }
    }
    const double ratio = seed.f0 * seed.f0 / (f_min * f_min) - 1.0;
    seed.gamma_l = c_min < 0.999 ? std::clamp(ratio / (1.0 / c_min - 1.0), 0.05, 1.0) : 0.5;
  }

  const FluxFitParams starts[] = {
      seed,
      {seed.f0, std::clamp(seed.gamma_l * 0.7, 1e-3, 1.0), seed.lb, seed.current_offset},
      {seed.f0, std::clamp(seed.gamma_l * 1.3, 1e-3, 1.0), seed.lb, seed.current_offset},
      {seed.f0, seed.gamma_l, seed.lb * 0.9, seed.current_offset},
      {seed.f0, seed.gamma_l, seed.lb * 1.1, seed.current_offset},
  };

  std::optional<FitResult> best;
  for (const auto& s : starts) {
    FitResult r = run_flux_fit(data, s);
    if (!best) {
      best = std::move(r);
      continue;
    }
    const double tol = 1e-12 * std::max(best->residual_rms, 1e-300);
    const bool better = r.residual_rms < best->residual_rms - tol;
    const bool tie = std::abs(r.residual_rms - best->residual_rms) <= tol;
    if (better || (tie && std::abs(r.parameters(3)) < std::abs(best->parameters(3)))) best = std::move(r);
  }

  FluxFit out;
  out.fit = std::move(*best);
  const auto& q = out.fit.parameters;
  out.params = {q(0) * kGHz, q(1), q(2), q(3) * 1e-3};

  double lo = data.front().bias_current;
  double hi = lo;
  for (const auto& s : data) {
    lo = std::min(lo, s.bias_current);
    hi = std::max(hi, s.bias_current);
  }
  if ((hi - lo) * out.params.lb < 0.5) {
    out.identifiable = false;
    out.fit.warnings.push_back("IdentifiabilityWarning: bias span covers less than half a flux period");
  }
  return out;
}

// ---- dimer reflection ------------------------------------------------------

Complex resonator_reflection(double omega, double omega_m, double kappa, double gamma) {
  const double delta = omega - omega_m;
  const double total = kappa + gamma;
  const Complex num{kappa * total / 2.0, -kappa * delta};
  return -1.0 + num / (delta * delta + total * total / 4.0);
}

Complex dimer_reflection(const DimerFitParams& p, double omega) {
  return resonator_reflection(omega, p.omega_plus, p.kappa_plus, p.gamma_plus) *
         resonator_reflection(omega, p.omega_minus, p.kappa_minus, p.gamma_minus) *
         std::polar(1.0, -p.phase);
}

DimerAsymmetry dimer_asymmetry(double omega_plus, double omega_minus, double kappa_plus, double kappa_minus) {
  if (!(kappa_plus > 0.0) || !(kappa_minus > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "coupling rates must be positive");
  }
  if (!(omega_plus > omega_minus)) throw Error(ErrorCode::InvalidArgument, "need omega_plus > omega_minus");
  const double split = omega_plus - omega_minus;
  const double detuning = split * (kappa_plus - kappa_minus) / (kappa_plus + kappa_minus);
  const double mid = 0.5 * (omega_plus + omega_minus);
  DimerAsymmetry out;
  out.asymmetry = detuning * detuning;
  out.omega_1 = mid + 0.5 * detuning;
  out.omega_2 = mid - 0.5 * detuning;
  out.coupling = 0.5 * std::sqrt(std::max(split * split - out.asymmetry, 0.0));
  return out;
}

DimerModes dimer_forward(double omega_1, double omega_2, double coupling, double kappa_total) {
  const double detuning = omega_1 - omega_2;
  const double split = std::sqrt(detuning * detuning + 4.0 * coupling * coupling);
  const double mid = 0.5 * (omega_1 + omega_2);
  return {mid + 0.5 * split, mid - 0.5 * split, 0.5 * kappa_total * (1.0 + detuning / split),
          0.5 * kappa_total * (1.0 - detuning / split)};
}

DimerFit fit_dimer_reflection(const ComplexTrace& trace, std::optional<DimerFitParams> init) {
  trace.validate();
  if (trace.size() < 8) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("dimer fit needs >= 8 points for 7 parameters, got {}", trace.size()));
  }
  const double f_lo = trace.frequencies.front() / kGHz;
  const double f_hi = trace.frequencies.back() / kGHz;

  DimerFitParams seed;
  if (init) {
    seed = *init;
  } else {
    const auto est = extract_resonances(trace);
    if (est.size() < 2) {
      throw Error(ErrorCode::NoResonanceFound, "dimer seed needs two resonances in the trace");
    }
    // The two strongest windings: narrowest linewidths.
    std::vector<ResonanceEstimate> pick = est;
    std::sort(pick.begin(), pick.end(), [](const auto& a, const auto& b) { return a.kappa < b.kappa; });
    pick.resize(2);
    if (pick[0].center_frequency > pick[1].center_frequency) std::swap(pick[0], pick[1]);
    seed.omega_minus = kTwoPi * pick[0].center_frequency;
    seed.omega_plus = kTwoPi * pick[1].center_frequency;
    seed.kappa_minus = kTwoPi * pick[0].kappa;
    seed.kappa_plus = kTwoPi * pick[1].kappa;
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < trace.size(); ++i) {
      acc += trace.values[i] / dimer_reflection(seed, kTwoPi * trace.frequencies[i]);
    }
    seed.phase = -std::arg(acc);
  }

  const auto m = static_cast<Eigen::Index>(trace.size());
  auto unpack = [](const Eigen::VectorXd& q) {
    DimerFitParams p;
    p.omega_plus = kTwoPi * kGHz * q(0);
    p.omega_minus = kTwoPi * kGHz * q(1);
    p.kappa_plus = kTwoPi * kGHz * q(2);
    p.kappa_minus = kTwoPi * kGHz * q(3);
    p.gamma_plus = kTwoPi * kGHz * q(4);
    p.gamma_minus = kTwoPi * kGHz * q(5);
    p.phase = q(6);
    return p;
  };
  auto residuals = [&](const Eigen::VectorXd& q) {
    const DimerFitParams p = unpack(q);
    Eigen::VectorXd r(2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex diff = dimer_reflection(p, kTwoPi * trace.frequencies[static_cast<std::size_t>(i)]) -
                           trace.values[static_cast<std::size_t>(i)];
      r(2 * i) = diff.real();
      r(2 * i + 1) = diff.imag();
    }
    return r;
  };

  const double to_ghz = 1.0 / (kTwoPi * kGHz);
  Eigen::VectorXd q0(7);
  q0 << seed.omega_plus * to_ghz, seed.omega_minus * to_ghz, seed.kappa_plus * to_ghz,
      seed.kappa_minus * to_ghz, seed.gamma_plus * to_ghz, seed.gamma_minus * to_ghz,
      std::remainder(seed.phase, kTwoPi);
  const double mid = 0.5 * (q0(0) + q0(1));
  ParameterBounds bounds = ParameterBounds::unbounded(7);
  bounds.lower(0) = mid;
  bounds.upper(0) = f_hi;
  bounds.lower(1) = f_lo;
  bounds.upper(1) = mid;
  for (int i = 2; i < 4; ++i) bounds.lower(i) = 1e-9;
  for (int i = 4; i < 6; ++i) bounds.lower(i) = 0.0;
  q0 = q0.cwiseMax(bounds.lower).cwiseMin(bounds.upper);

  DimerFit out;
  out.fit = least_squares_fit(residuals, q0, bounds,
                              {"f_plus_ghz", "f_minus_ghz", "kappa_plus_ghz", "kappa_minus_ghz",
                               "gamma_plus_ghz", "gamma_minus_ghz", "phase_rad"});
  out.params = unpack(out.fit.parameters);
  const DimerAsymmetry a = dimer_asymmetry(out.params.omega_plus, out.params.omega_minus,
                                           out.params.kappa_plus, out.params.kappa_minus);
  out.params.asymmetry = a.asymmetry;
  out.params.omega_1 = a.omega_1;
  out.params.omega_2 = a.omega_2;
  out.params.coupling = a.coupling;
  return out;
}

// ---- gain lobes -----------------------------------------------------------

double gain_bandwidth_product(double gain_db, double bandwidth_hz) {
  return std::pow(10.0, gain_db / 20.0) * bandwidth_hz;
}

double gain_model(const std::vector<GainLobe>& lobes, double frequency) {
  double g = 1.0;
  for (const auto& l : lobes) {
    const double x = 2.0 * (frequency - l.center) / l.bandwidth;
    g += (std::pow(10.0, l.gain_db / 10.0) - 1.0) / (1.0 + x * x);
  }
  return g;
}

GainFit fit_gain_profile(const std::vector<GainSample>& trace) {
  if (trace.empty()) throw Error(ErrorCode::EmptyGrid, "gain trace is empty");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (!(trace[i].frequency > trace[i - 1].frequency)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("gain trace not increasing at index {}", i));
    }
  }

  // Local maxima above 3 dB; a second maximum counts only behind a dip deeper
  // than max(1 dB, 8 sigma) with sigma from the second differences.
  std::vector<std::size_t> peaks;
  const std::size_t n = trace.size();
  double sigma = 0.0;
  if (n >= 3) {
    std::vector<double> d2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      d2.push_back(std::abs(trace[i + 1].gain_db - 2.0 * trace[i].gain_db + trace[i - 1].gain_db));
    }
    std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(d2.size() / 2), d2.end());
    sigma = 1.4826 * d2[d2.size() / 2] / std::sqrt(6.0);
  }
  const double min_dip = std::max(1.0, 8.0 * sigma);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = trace[i].gain_db;
    if (g <= 3.0) continue;
    const bool left = i == 0 || g >= trace[i - 1].gain_db;
    const bool right = i + 1 == n || g > trace[i + 1].gain_db;
    if (left && right) peaks.push_back(i);
  }
  std::vector<std::size_t> lobes_at;
  for (std::size_t p : peaks) {
    if (!lobes_at.empty()) {
      const std::size_t q = lobes_at.back();
      double dip = trace[q].gain_db;
      for (std::size_t i = q; i <= p; ++i) dip = std::min(dip, trace[i].gain_db);
      if (std::min(trace[q].gain_db, trace[p].gain_db) - dip < min_dip) {
        if (trace[p].gain_db > trace[q].gain_db) lobes_at.back() = p;
        continue;
      }
    }
    lobes_at.push_back(p);
  }
  if (lobes_at.empty()) throw Error(ErrorCode::NoLobeFound, "no gain lobe rises above 3 dB");
  if (lobes_at.size() > 2) {
    std::sort(lobes_at.begin(), lobes_at.end(),
              [&](std::size_t a, std::size_t b) { return trace[a].gain_db > trace[b].gain_db; });
    lobes_at.resize(2);
    std::sort(lobes_at.begin(), lobes_at.end());
  }

  // Seeds: peak point and its -3 dB crossings.
  const double f_scale = 1e6;  // fit in MHz
  const double f_ref = trace[lobes_at.front()].frequency;
  const auto k = static_cast<Eigen::Index>(lobes_at.size());
  Eigen::VectorXd q0(3 * k);
  ParameterBounds bounds = ParameterBounds::unbounded(3 * k);
  std::vector<std::string> names;
  for (Eigen::Index l = 0; l < k; ++l) {
    const std::size_t p = lobes_at[static_cast<std::size_t>(l)];
    const double half = trace[p].gain_db - 3.0;
    std::size_t a = p;
    while (a > 0 && trace[a].gain_db > half) --a;
    std::size_t b = p;
    while (b + 1 < n && trace[b].gain_db > half) ++b;
    const double spacing = n < 2 ? 1.0
                           : p + 1 < n ? trace[p + 1].frequency - trace[p].frequency
                                       : trace[p].frequency - trace[p - 1].frequency;
    const double width = std::max(trace[b].frequency - trace[a].frequency, spacing);
    q0(3 * l) = trace[p].gain_db;
    q0(3 * l + 1) = (trace[p].frequency - f_ref) / f_scale;
    q0(3 * l + 2) = width / f_scale;
    bounds.lower(3 * l) = 0.0;
    bounds.lower(3 * l + 2) = 1e-9;
    names.push_back(fmt::format("lobe{}_gain_db", l));
    names.push_back(fmt::format("lobe{}_center_mhz", l));
    names.push_back(fmt::format("lobe{}_fwhm_mhz", l));
  }

  const auto m = static_cast<Eigen::Index>(n);
  auto unpack = [&](const Eigen::VectorXd& q) {
    std::vector<GainLobe> lobes(static_cast<std::size_t>(k));
    for (Eigen::Index l = 0; l < k; ++l) {
      auto& lobe = lobes[static_cast<std::size_t>(l)];
      lobe.gain_db = q(3 * l);
      lobe.center = f_ref + q(3 * l + 1) * f_scale;
      lobe.bandwidth = q(3 * l + 2) * f_scale;
    }
    return lobes;
  };
  auto residuals = [&](const Eigen::VectorXd& q) {
    const auto lobes = unpack(q);
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& s = trace[static_cast<std::size_t>(i)];
      r(i) = gain_model(lobes, s.frequency) - std::pow(10.0, s.gain_db / 10.0);
    }
    return r;
  };

  GainFit out;
  out.fit = least_squares_fit(residuals, q0, bounds, std::move(names));
  out.lobes = unpack(out.fit.parameters);
  for (auto& l : out.lobes) l.gain_bandwidth = gain_bandwidth_product(l.gain_db, l.bandwidth);
  std::sort(out.lobes.begin(), out.lobes.end(),
            [](const GainLobe& a, const GainLobe& b) { return a.center < b.center; });
  return out;
}

// ---- noise visibility -----------------------------------------------------

NoiseVisibility noise_visibility(const std::vector<SpectrumSample>& pump_on,
                                 const std::vector<SpectrumSample>& pump_off) {
  if (pump_on.empty() || pump_off.empty()) throw Error(ErrorCode::EmptyGrid, "spectrum is empty");
  if (pump_on.size() != pump_off.size()) {
    throw Error(ErrorCode::GridMismatch,
                fmt::format("spectra have {} and {} points", pump_on.size(), pump_off.size()));
  }
  NoiseVisibility out;
  out.frequencies.reserve(pump_on.size());
  out.visibility.reserve(pump_on.size());
  for (std::size_t i = 0; i < pump_on.size(); ++i) {
    const double f = pump_on[i].frequency;
    if (std::abs(f - pump_off[i].frequency) > 1e-9 * std::max(std::abs(f), 1.0)) {
      throw Error(ErrorCode::GridMismatch, fmt::format("frequency grids differ at index {}", i));
    }
    const double v = pump_on[i].density_dbm - pump_off[i].density_dbm;
    out.frequencies.push_back(f);
    out.visibility.push_back(v);
    if (i == 0 || v > out.max_visibility) {
      out.max_visibility = v;
      out.max_frequency = f;
    }
  }
  return out;
}

}  // namespace jjal
