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
#include <string>

namespace jjal {

/// Circuit parameters of one dimerized SQUID array, strict SI units.
///
/// Islands 1..N sit between N SQUIDs; the center capacitor bridges islands
/// N/2 and N/2+1 and each of those islands carries `center_ground_capacitance`
/// instead of `island_capacitance`.
struct ArrayDesign {
  int n_squids = 0;                       // N, even, >= 2
  double critical_current = 0.0;          // A, zero-field, per SQUID
  double josephson_capacitance = 0.0;     // F
  double island_capacitance = 0.0;        // F
  double center_capacitance = 0.0;        // F
  double center_ground_capacitance = 0.0; // F
  double stray_inductance = 0.0;          // H per cell, scattering/flux fits only
  double port_impedance = 50.0;           // Ohm
  // Resistance asymmetry between the two array halves. Metadata only; it
  // does not enter any model.
  std::optional<double> resistance_asymmetry;

  /// Throws Error(InvalidArgument) when an invariant is violated.
  void validate() const;

  double josephson_energy() const;      // J, Phi0 Ic / 2pi
  double josephson_inductance() const;  // H, Phi0 / (2pi Ic)
};

/// External flux threading each SQUID loop, in units of Phi0.
struct FluxBias {
  double phi = 0.0;
};

/// Flux-tuned inductance of a symmetric dc-SQUID: L_J0 / |cos(pi Phi)|.
/// Throws FrustrationSingularity when |cos(pi Phi)| <= 1e-9.
double squid_inductance(double lj0, FluxBias flux);

/// Single-junction plasma frequency 1 / (2pi sqrt(L_J C_J)), in Hz.
double plasma_frequency(double lj, double cj);
double plasma_frequency(const ArrayDesign& design);

/// Devices I-III of the three-sample study (N = 1200, 1600, 1800) at the
/// quoted circuit parameters. `index` is 1, 2 or 3.
ArrayDesign reference_device(int index);

}  // namespace jjal
