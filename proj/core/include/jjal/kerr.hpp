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
#include "jjal/eigenmodes.hpp"

namespace jjal {

/// Removes the sign jump of antisymmetric modes at the center capacitor.
///
/// For every mode classified Antisymmetric, node-flux entries of islands
/// N/2+1..N are negated and Psi is recomputed as C^{1/2} Phi, so the
/// node-flux relation keeps holding. Frequencies are unchanged. Idempotent.
ModeSpectrum symmetrize_modes(const ModeSpectrum& spectrum);

/// Junction phase-drop amplitudes sqrt(C_J) * (Phi_{i} - Phi_{i-1}) for
/// bonds i = 1..N+1 (grounded ends), one column per requested mode.
Eigen::MatrixXd bond_amplitudes(const ModeSpectrum& spectrum, double josephson_capacitance,
                                Eigen::Index mode_count);

/// eta_mmkk = sum_i X_{i,m}^2 X_{i,k}^2 with X from bond_amplitudes.
double eta_factor(const ModeSpectrum& spectrum, double josephson_capacitance, int m, int k);

/// Self- and cross-Kerr coefficients of the lowest `retained` modes.
///
/// `self_kerr` and `cross_kerr` hold the value of
///   K_mm = 2 hbar pi^4 E_J eta_mmmm / (Phi0^4 C_J^2 w_m^2)
///   K_mk = 4 hbar pi^4 E_J eta_mmkk / (Phi0^4 C_J^2 w_m w_k)
/// read directly as a frequency in Hz. `cross_kerr` is the full symmetric
/// matrix; its diagonal is the cross formula at k = m, i.e. 2 K_mm.
struct KerrTensor {
  Eigen::VectorXd self_kerr;   // Hz
  Eigen::MatrixXd cross_kerr;  // Hz
  Eigen::MatrixXd eta;         // dimensionless
  int retained_mode_count = 0;
};

/// Symmetrizes `spectrum` first if needed.
KerrTensor kerr_coefficients(const ArrayDesign& design, const ModeSpectrum& spectrum, int retained);

}  // namespace jjal
