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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jjal/design.hpp"
#include "jjal/ladder.hpp"

namespace jjal {

struct SpdRoots {
  Eigen::MatrixXd sqrt;          // A^{1/2}
  Eigen::MatrixXd inverse_sqrt;  // A^{-1/2}
};

/// Symmetric square root and inverse square root of an SPD matrix through
/// one symmetric eigendecomposition. Throws NotPositiveDefinite.
SpdRoots spd_roots(const Eigen::MatrixXd& a);
Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& a);

enum class MirrorClass { Symmetric, Antisymmetric };

/// Normal modes of the ladder, ascending in frequency.
///
/// Columns of `eigenvectors` (Psi) are orthonormal; `node_fluxes` holds
/// Phi_m = C^{-1/2} Psi_m. Each Psi_m is signed so that its entry of largest
/// magnitude is positive.
struct ModeSpectrum {
  Eigen::VectorXd angular_frequencies;  // rad/s
  Eigen::MatrixXd eigenvectors;
  Eigen::MatrixXd node_fluxes;
  Eigen::MatrixXd sqrt_capacitance;
  Eigen::MatrixXd inverse_sqrt_capacitance;
  std::vector<MirrorClass> mirror_class;
  bool symmetrized = false;

  std::optional<ArrayDesign> design;
  FluxBias flux;

  Eigen::Index size() const { return angular_frequencies.size(); }
  double frequency_hz(Eigen::Index m) const;
};

/// Diagonalizes C^{-1/2} L^{-1} C^{-1/2}.
ModeSpectrum solve_modes(const LadderMatrices& matrices);
ModeSpectrum solve_modes(const ArrayDesign& design, FluxBias flux);

/// <v, reverse(v)> / <v, v>: +1 for mirror-symmetric, -1 for antisymmetric
/// vectors under j -> N+1-j.
double mirror_overlap(const Eigen::Ref<const Eigen::VectorXd>& v);

struct DimerRecord {
  int dimer_index = 0;
  double lower_frequency = 0.0;  // rad/s
  double upper_frequency = 0.0;  // rad/s
  double half_splitting = 0.0;   // J_n, rad/s
  std::pair<int, int> mode_indices;
};

/// Groups consecutive sorted modes (0,1), (2,3), ... below `f_max_hz`.
/// Throws OddModeCount if one mode would be left unpaired.
std::vector<DimerRecord> pair_dimers(const ModeSpectrum& spectrum, double f_max_hz);

}  // namespace jjal
