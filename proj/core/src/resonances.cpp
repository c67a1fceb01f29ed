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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "jjal/errors.hpp"
#include "jjal/least_squares.hpp"
#include "jjal/scattering.hpp"

namespace jjal {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> unwrapped_phase(const ComplexTrace& trace) {
  std::vector<double> phase(trace.size());
  double shift = 0.0;
  double prev = std::arg(trace.values[0]);
  phase[0] = prev;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double raw = std::arg(trace.values[i]);
    const double delta = raw - prev;
    if (std::abs(delta) > kPi) shift -= 2.0 * kPi * std::round(delta / (2.0 * kPi));
    phase[i] = raw + shift;
    prev = raw;
  }
  return phase;
}

// d(phase)/df by central differences (one-sided at the ends).
std::vector<double> phase_slope(const std::vector<double>& f, const std::vector<double>& phase) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    d[i] = (phase[hi] - phase[lo]) / (f[hi] - f[lo]);
  }
  return d;
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double t = (at - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

struct Peak {
  double frequency;
  double kappa;  // Hz
};

struct PhaseProfile {
  std::vector<double> phase;
  double direction = -1.0;  // sign of d(phase)/df through a resonance
  std::vector<Peak> peaks;
};

PhaseProfile locate_peaks(const ComplexTrace& trace) {
  PhaseProfile p;
  const auto& f = trace.frequencies;
  p.phase = unwrapped_phase(trace);
  const std::vector<double> slope = phase_slope(f, p.phase);

  std::size_t arg = 0;
  for (std::size_t i = 1; i < slope.size(); ++i) {
    if (std::abs(slope[i]) > std::abs(slope[arg])) arg = i;
  }
  if (slope[arg] == 0.0) return p;
  p.direction = slope[arg] > 0.0 ? 1.0 : -1.0;

  std::vector<double> delay(slope.size());
  for (std::size_t i = 0; i < slope.size(); ++i) delay[i] = p.direction * slope[i];
  const double top = delay[arg];

  std::vector<Peak> candidates;
  for (std::size_t i = 1; i + 1 < delay.size(); ++i) {
    if (!(delay[i] > 0.02 * top)) continue;
    if (!(delay[i] >= delay[i - 1] && delay[i] > delay[i + 1])) continue;
    const double kappa = 4.0 / delay[i];
    // A resonance winds the phase by ~4.4 rad across +-kappa; demand half that.
    const double swing = p.direction * (interpolate(f, p.phase, f[i] + kappa) -
                                        interpolate(f, p.phase, f[i] - kappa));
    if (swing < 2.0) continue;
    candidates.push_back({f[i], kappa});
  }

  // Strongest first; drop weaker maxima within half a linewidth of a kept one.
  std::sort(candidates.begin(), candidates.end(),
            [](const Peak& a, const Peak& b) { return a.kappa < b.kappa; });
  for (const Peak& c : candidates) {
    const bool shadowed = std::any_of(p.peaks.begin(), p.peaks.end(), [&](const Peak& k) {
      return std::abs(k.frequency - c.frequency) < 0.5 * k.kappa;
    });
    if (!shadowed) p.peaks.push_back(c);
  }
  std::sort(p.peaks.begin(), p.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.frequency < b.frequency; });
  return p;
}

std::vector<ResonanceEstimate> fit_cluster(const ComplexTrace& trace, const PhaseProfile& profile,
                                           const std::vector<Peak>& cluster) {
  const auto& f = trace.frequencies;
  double lo = cluster.front().frequency - 3.0 * cluster.front().kappa;
  double hi = cluster.back().frequency + 3.0 * cluster.back().kappa;
  for (const Peak& p : cluster) {
    lo = std::min(lo, p.frequency - 3.0 * p.kappa);
    hi = std::max(hi, p.frequency + 3.0 * p.kappa);
  }
  lo = std::max(lo, f.front());
  hi = std::min(hi, f.back());

  // Fit in units of the widest linewidth around the window center.
  double scale = 0.0;
  for (const Peak& p : cluster) scale = std::max(scale, p.kappa);
  const double center = 0.5 * (lo + hi);

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= lo && f[i] <= hi) {
      x.push_back((f[i] - center) / scale);
      y.push_back(profile.phase[i]);
    }
  }
  const auto k = static_cast<Eigen::Index>(cluster.size());
  const Eigen::Index n_par = 2 + 2 * k;
  if (static_cast<Eigen::Index>(x.size()) < n_par + 1) return {};

  const double s = profile.direction;
  const double x_lo = (lo - center) / scale;
  const double x_hi = (hi - center) / scale;

  Eigen::VectorXd init(n_par);
  ParameterBounds bounds = ParameterBounds::unbounded(n_par);
  std::vector<std::string> names{"offset", "slope"};
  double y_mid = interpolate(x, y, 0.0);
  init(0) = y_mid;
  init(1) = 0.0;
  for (Eigen::Index r = 0; r < k; ++r) {
    const Peak& p = cluster[static_cast<std::size_t>(r)];
    const double u0 = (p.frequency - center) / scale;
    init(0) -= s * 2.0 * std::atan(2.0 * (0.0 - u0) / (p.kappa / scale));
    init(2 + 2 * r) = u0;
    init(3 + 2 * r) = p.kappa / scale;
    bounds.lower(2 + 2 * r) = x_lo;
    bounds.upper(2 + 2 * r) = x_hi;
    bounds.lower(3 + 2 * r) = 1e-6;
    bounds.upper(3 + 2 * r) = 1e3;
    names.push_back(fmt::format("center{}", r));
    names.push_back(fmt::format("kappa{}", r));
  }

  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  auto residuals = [&](const Eigen::VectorXd& q) {
    Eigen::VectorXd model = (q(0) + q(1) * xv.array()).matrix();
    for (Eigen::Index r = 0; r < k; ++r) {
      model.array() += s * 2.0 * ((xv.array() - q(2 + 2 * r)) * (2.0 / q(3 + 2 * r))).atan();
    }
    return Eigen::VectorXd(model - yv);
  };

  const FitResult fit = least_squares_fit(residuals, init, bounds, names);

  std::vector<ResonanceEstimate> out;
  for (Eigen::Index r = 0; r < k; ++r) {
    ResonanceEstimate e;
    e.center_frequency = center + scale * fit.parameters(2 + 2 * r);
    e.kappa = scale * fit.parameters(3 + 2 * r);
    e.reliable = fit.converged;
    if (e.kappa > 0.0 && e.center_frequency > f.front() && e.center_frequency < f.back()) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

std::vector<ResonanceEstimate> extract_resonances(const ComplexTrace& trace) {
  trace.validate();
  if (trace.size() < 5) throw Error(ErrorCode::NoResonanceFound, "trace too short to locate a resonance");
  const PhaseProfile profile = locate_peaks(trace);
  if (profile.peaks.empty()) {
    throw Error(ErrorCode::NoResonanceFound, "no phase winding found in the trace");
  }

  // Peaks whose +-3 kappa windows overlap are fitted jointly.
  std::vector<ResonanceEstimate> out;
  std::vector<Peak> cluster{profile.peaks.front()};
  auto flush = [&] {
    auto part = fit_cluster(trace, profile, cluster);
    out.insert(out.end(), part.begin(), part.end());
    cluster.clear();
  };
  for (std::size_t i = 1; i < profile.peaks.size(); ++i) {
    const Peak& prev = cluster.back();
    const Peak& next = profile.peaks[i];
    if (next.frequency - 3.0 * next.kappa < prev.frequency + 3.0 * prev.kappa) {
      cluster.push_back(next);
    } else {
      flush();
      cluster.push_back(next);
    }
  }
  flush();

  if (out.empty()) throw Error(ErrorCode::NoResonanceFound, "resonance fits left no estimate in range");
  std::sort(out.begin(), out.end(), [](const ResonanceEstimate& a, const ResonanceEstimate& b) {
    return a.center_frequency < b.center_frequency;
  });
  return out;
}

std::vector<ResonanceEstimate> find_resonances(const ArrayDesign& design, FluxBias flux, double f_min_hz,
                                               double f_max_hz) {
  const std::vector<double> coarse_grid = linear_grid(f_min_hz, f_max_hz, 1e6);
  const ComplexTrace coarse = s11_sweep(design, flux, coarse_grid);
  const PhaseProfile profile = locate_peaks(coarse);
  if (profile.peaks.empty()) {
    throw Error(ErrorCode::NoResonanceFound,
                fmt::format("no resonance between {:.6g} and {:.6g} Hz", f_min_hz, f_max_hz));
  }

  std::vector<double> grid = coarse_grid;
  for (const Peak& p : profile.peaks) {
    const double lo = std::max(f_min_hz, p.frequency - 2e6);
    const double hi = std::min(f_max_hz, p.frequency + 2e6);
    for (double f : linear_grid(lo, hi, 1e4)) grid.push_back(f);
  }
  std::sort(grid.begin(), grid.end());
  // Drop points closer than 1 Hz; keeps the merged grid strictly increasing.
  std::vector<double> merged;
  merged.reserve(grid.size());
  for (double f : grid) {
    if (merged.empty() || f - merged.back() > 1.0) merged.push_back(f);
  }
  return extract_resonances(s11_sweep(design, flux, merged));
}

}  // namespace jjal
