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

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jjal {

struct TransmonParams {
  double josephson_energy = 0.0;  // J
  double charging_energy = 0.0;   // J
  double gate_charge = 0.0;
  int charge_cutoff = 30;         // basis n = -n_cut..n_cut

  /// Throws InvalidArgument (E_J < 0, E_c <= 0, n_cut < 10).
  void validate() const;
};

/// Lowest `n_levels` eigenenergies (J, ascending) of
/// 4 E_c (n - n_g)^2 - E_J/2 (|n><n+1| + h.c.).
/// The cutoff is doubled until every level moves by < 1e-10 relative;
/// throws CutoffTooSmall if the last doubling still moves one by > 1e-8.
std::vector<double> transmon_levels_charge_basis(const TransmonParams& p, int n_levels);

/// E_k = -E_J + sqrt(8 E_J E_c)(k + 1/2) - (E_c/12)(6k^2 + 6k + 3).
double transmon_levels_asymptotic(const TransmonParams& p, int k);

/// <g|n|e> in the charge basis, magnitude.
double charge_matrix_element(const TransmonParams& p, int from, int to);

struct ResonatorParams {
  double frequency = 0.0;  // f_r, Hz
  double kappa = 0.0;      // external, rad/s
  double gamma = 0.0;      // internal, rad/s
  double coupling = 0.0;   // g, rad/s
};

struct DispersiveParams {
  double chi = 0.0;                   // chi_qr, rad/s
  double qubit_anharmonicity = 0.0;   // alpha_q, rad/s (negative for a transmon)
  double qubit_frequency = 0.0;       // dressed, Hz
  double resonator_frequency = 0.0;   // dressed, qubit in g, Hz
  double resonator_anharmonicity = 0.0;  // alpha_r, rad/s
  int fock_cutoff = 0;
  std::vector<std::string> warnings;
};

/// Diagonalizes charge (x) Fock with the coupling hbar g n (a + a^dag).
/// chi = (E_g1 - E_g0) - (E_e1 - E_e0), positive when the qubit sits below
/// the resonator. The Fock cutoff starts at 5 and doubles until chi moves by
/// < 1 kHz; throws CutoffTooSmall past 40. Adds "NonDispersiveWarning" when
/// g / |w_r - w_q| > 0.1.
DispersiveParams dispersive_shift(const TransmonParams& q, const ResonatorParams& r);

/// Perturbative reference g^2 alpha / (Delta (Delta - alpha)) with
/// Delta = w_q - w_r, all rad/s; returns |.|.
double perturbative_chi(double coupling, double qubit_anharmonicity, double qubit_omega, double resonator_omega);

}  // namespace jjal
