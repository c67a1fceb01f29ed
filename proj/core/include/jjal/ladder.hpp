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

#include <Eigen/Dense>

#include "jjal/design.hpp"

namespace jjal {

/// Capacitance and inverse-inductance matrices of the grounded ladder.
///
/// Row i corresponds to island i+1; the boundary nodes 0 and N+1 are
/// grounded and eliminated. The center bond joins rows N/2-1 and N/2: it
/// carries -C_c in the capacitance matrix and no inductive coupling.
struct LadderMatrices {
  Eigen::MatrixXd capacitance;         // F
  Eigen::MatrixXd inverse_inductance;  // 1/H
  double josephson_inductance = 0.0;   // flux-tuned L_J used to build them, H

  Eigen::Index size() const { return capacitance.rows(); }
};

/// Stray inductance is not part of these matrices.
LadderMatrices build_ladder_matrices(const ArrayDesign& design, FluxBias flux);

/// Textbook uniform chain of n islands: diagonals 2C_J + C_0 and 2/L_J,
/// couplings -C_J and -1/L_J everywhere including the center bond.
LadderMatrices uniform_chain_matrices(int n, double lj, double cj, double c0);

}  // namespace jjal
