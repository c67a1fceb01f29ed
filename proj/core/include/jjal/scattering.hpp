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

#include <complex>
#include <string>
#include <vector>

#include "jjal/design.hpp"

namespace jjal {

using Complex = std::complex<double>;

/// Two-port transmission matrix. b in Ohm, c in Siemens.
///
/// Engineering convention throughout: time dependence e^{+j w t} with j
/// stored as the numeric imaginary unit, so an inductor is +j w L.
struct AbcdMatrix {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  static AbcdMatrix identity() { return {}; }
  static AbcdMatrix series(Complex impedance) { return {1.0, impedance, 0.0, 1.0}; }
  static AbcdMatrix shunt(Complex admittance) { return {1.0, 0.0, admittance, 1.0}; }

  Complex determinant() const { return a * d - b * c; }
  AbcdMatrix operator*(const AbcdMatrix& rhs) const;
};

/// Repeated squaring; `exponent` >= 0.
AbcdMatrix power(const AbcdMatrix& m, int exponent);

/// Reflection at the input port of `t` loaded by `load_impedance`.
/// With load_impedance == z0 this is (A + B/Z0 - C Z0 - D)/(A + B/Z0 + C Z0 + D).
Complex reflection_coefficient(const AbcdMatrix& t, double z0, Complex load_impedance);

/// Reflection of the array with its far end tied to ground (zero load).
Complex shorted_reflection(const AbcdMatrix& t, double z0);

/// One cell T_LS * T_SQ * T_C0 at angular frequency w.
AbcdMatrix cell_matrix(const ArrayDesign& design, double lj, double w);

/// Full array cascade: N/2 cells, T_C0' T_Cc T_C0', N/2 cells.
AbcdMatrix array_matrix(const ArrayDesign& design, FluxBias flux, double frequency_hz);

struct ComplexTrace {
  std::vector<double> frequencies;  // Hz, strictly increasing
  std::vector<Complex> values;
  // Sign convention of the stored phase; "engineering" means e^{+j w t}.
  std::string convention = "engineering";

  std::size_t size() const { return frequencies.size(); }
  /// Throws InvalidArgument on length mismatch or non-increasing grid,
  /// EmptyGrid when empty.
  void validate() const;
};

/// Complex-conjugates the values (e^{-i w t} data into engineering form) and
/// flags the conversion in `convention`.
ComplexTrace to_engineering_convention(ComplexTrace physics_trace);

/// S11 of the array on `grid` (Hz). The far end is grounded, so the
/// one-port is lossless and |S11| = 1.
/// Throws EmptyGrid, InvalidArgument (grid not increasing or above 1.2x the
/// plasma frequency), FrustrationSingularity.
ComplexTrace s11_sweep(const ArrayDesign& design, FluxBias flux, const std::vector<double>& grid);

/// max |AD - BC - 1| over every cascade prefix at `frequency_hz`.
double reciprocity_defect(const ArrayDesign& design, FluxBias flux, double frequency_hz);

struct ResonanceEstimate {
  double center_frequency = 0.0;  // Hz
  double kappa = 0.0;             // kappa / 2pi, Hz
  bool reliable = true;           // false if the local fit did not converge
};

/// Resonances at group-delay maxima of the unwrapped phase, refined by a
/// joint fit of offset + slope*w + 2 s arctan(2 (w - w0)/kappa) over +-3
/// linewidths (s the winding direction). Overlapping windows are fitted
/// together. Throws NoResonanceFound.
std::vector<ResonanceEstimate> extract_resonances(const ComplexTrace& trace);

/// Two-pass search: 1 MHz coarse sweep, 10 kHz refinement around each
/// group-delay peak, then extract_resonances on the merged grid.
std::vector<ResonanceEstimate> find_resonances(const ArrayDesign& design, FluxBias flux,
                                               double f_min_hz, double f_max_hz);

/// Uniform grid [start, stop] with the given step (Hz), inclusive of stop
/// within half a step.
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace jjal
