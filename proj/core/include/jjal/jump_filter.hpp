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

#include <cstddef>
#include <vector>

namespace jjal {

struct JumpFilterConfig {
  std::vector<double> state_means;  // one per tracked state, in signal units
  double band_halfwidth = 0.0;      // sigma

  /// Throws InvalidArgument (no states, sigma <= 0) or OverlappingBands
  /// when two means are within 2 sigma.
  void validate() const;
};

struct JumpAssignment {
  std::vector<int> labels;   // state index per sample
  std::size_t jumps = 0;
  std::size_t first_in_band = 0;
  // Lengths (in samples) of completed dwells per state; the dwell running
  // into the end of the record is left out.
  std::vector<std::vector<std::size_t>> dwell_samples;
};

/// Latching filter: the state switches only when a sample falls within
/// +-sigma of another state's mean; out-of-band samples keep the current
/// state. Samples before the first in-band one take its state.
/// Throws NoInBandSample.
JumpAssignment assign_qubit_states(const std::vector<double>& q_series, const JumpFilterConfig& config);

/// Histogram of dwell lengths with `bin_width` samples per bin.
std::vector<std::size_t> dwell_histogram(const std::vector<std::size_t>& dwells, std::size_t bin_width);

/// 1 - P(label e | truth g) - P(label g | truth e) for labels/truth in {0, 1}.
double discrimination_fidelity(const std::vector<int>& labels, const std::vector<int>& truth);

}  // namespace jjal
