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

#include "jjal/jump_filter.hpp"

#include <cmath>

#include <fmt/format.h>

#include "jjal/errors.hpp"

namespace jjal {

void JumpFilterConfig::validate() const {
  if (state_means.empty()) throw Error(ErrorCode::InvalidArgument, "no state means given");
  if (!(band_halfwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "band half-width must be positive");
  for (std::size_t i = 0; i < state_means.size(); ++i) {
    for (std::size_t j = i + 1; j < state_means.size(); ++j) {
      if (!(std::abs(state_means[i] - state_means[j]) > 2.0 * band_halfwidth)) {
        throw Error(ErrorCode::OverlappingBands,
                    fmt::format("bands of states {} and {} overlap", i, j));
      }
    }
  }
}

namespace {

int band_of(double q, const JumpFilterConfig& c) {
  for (std::size_t k = 0; k < c.state_means.size(); ++k) {
    if (std::abs(q - c.state_means[k]) <= c.band_halfwidth) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

JumpAssignment assign_qubit_states(const std::vector<double>& q_series, const JumpFilterConfig& config) {
  config.validate();
  JumpAssignment out;
  out.dwell_samples.resize(config.state_means.size());

  int state = -1;
  for (std::size_t i = 0; i < q_series.size(); ++i) {
    state = band_of(q_series[i], config);
    if (state >= 0) {
      out.first_in_band = i;
      break;
    }
  }
  if (state < 0) throw Error(ErrorCode::NoInBandSample, "no sample falls inside any state band");

  out.labels.assign(q_series.size(), state);
  std::size_t dwell_start = 0;
  bool first_dwell = true;
  for (std::size_t i = out.first_in_band; i < q_series.size(); ++i) {
    const int band = band_of(q_series[i], config);
    if (band >= 0 && band != state) {
      // The dwell cut by the record start is as incomplete as the last one.
      if (!first_dwell) out.dwell_samples[static_cast<std::size_t>(state)].push_back(i - dwell_start);
      first_dwell = false;
      dwell_start = i;
      state = band;
      ++out.jumps;
    }
    out.labels[i] = state;
  }
  return out;
}

std::vector<std::size_t> dwell_histogram(const std::vector<std::size_t>& dwells, std::size_t bin_width) {
  if (bin_width == 0) throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  std::vector<std::size_t> hist;
  for (std::size_t d : dwells) {
    const std::size_t bin = d / bin_width;
    if (bin >= hist.size()) hist.resize(bin + 1, 0);
    ++hist[bin];
  }
  return hist;
}

double discrimination_fidelity(const std::vector<int>& labels, const std::vector<int>& truth) {
  if (labels.size() != truth.size()) throw Error(ErrorCode::InvalidArgument, "label and truth lengths differ");
  std::size_t n_g = 0;
  std::size_t n_e = 0;
  std::size_t e_given_g = 0;
  std::size_t g_given_e = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (truth[i] == 0) {
      ++n_g;
      if (labels[i] == 1) ++e_given_g;
    } else if (truth[i] == 1) {
      ++n_e;
      if (labels[i] == 0) ++g_given_e;
    }
  }
  if (n_g == 0 || n_e == 0) throw Error(ErrorCode::InsufficientData, "truth lacks one of the two states");
  return 1.0 - static_cast<double>(e_given_g) / static_cast<double>(n_g) -
         static_cast<double>(g_given_e) / static_cast<double>(n_e);
}

}  // namespace jjal
