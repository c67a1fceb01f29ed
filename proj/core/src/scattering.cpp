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

#include "jjal/scattering.hpp"

#include <cmath>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

AbcdMatrix AbcdMatrix::operator*(const AbcdMatrix& r) const {
  return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

AbcdMatrix power(const AbcdMatrix& m, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative cascade length");
  AbcdMatrix result = AbcdMatrix::identity();
  AbcdMatrix base = m;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

Complex reflection_coefficient(const AbcdMatrix& t, double z0, Complex load_impedance) {
  const Complex zin_num = t.a * load_impedance + t.b;
  const Complex zin_den = t.c * load_impedance + t.d;
  return (zin_num - z0 * zin_den) / (zin_num + z0 * zin_den);
}

Complex shorted_reflection(const AbcdMatrix& t, double z0) {
  return (t.b - z0 * t.d) / (t.b + z0 * t.d);
}

AbcdMatrix cell_matrix(const ArrayDesign& design, double lj, double w) {
  const Complex j{0.0, 1.0};
  const Complex z_ls = j * w * design.stray_inductance;
  const Complex z_sq = 1.0 / (1.0 / (j * w * lj) + j * w * design.josephson_capacitance);
  const Complex y_c0 = j * w * design.island_capacitance;
  return AbcdMatrix::series(z_ls) * AbcdMatrix::series(z_sq) * AbcdMatrix::shunt(y_c0);
}

namespace {

AbcdMatrix center_matrix(const ArrayDesign& design, double w) {
  const Complex j{0.0, 1.0};
  const AbcdMatrix c0p = AbcdMatrix::shunt(j * w * design.center_ground_capacitance);
  return c0p * AbcdMatrix::series(1.0 / (j * w * design.center_capacitance)) * c0p;
}

}  // namespace

AbcdMatrix array_matrix(const ArrayDesign& design, FluxBias flux, double frequency_hz) {
  const double lj = squid_inductance(design.josephson_inductance(), flux);
  const double w = kTwoPi * frequency_hz;
  const AbcdMatrix half = power(cell_matrix(design, lj, w), design.n_squids / 2);
  return half * center_matrix(design, w) * half;
}

void ComplexTrace::validate() const {
  if (frequencies.empty()) throw Error(ErrorCode::EmptyGrid, "trace has no points");
  if (frequencies.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("trace has {} frequencies but {} values", frequencies.size(), values.size()));
  }
  for (std::size_t i = 1; i < frequencies.size(); ++i) {
    if (!(frequencies[i] > frequencies[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("trace frequencies not increasing at index {}", i));
    }
  }
}

ComplexTrace to_engineering_convention(ComplexTrace physics_trace) {
  for (auto& v : physics_trace.values) v = std::conj(v);
  physics_trace.convention = "engineering (conjugated from physics convention)";
  return physics_trace;
}

ComplexTrace s11_sweep(const ArrayDesign& design, FluxBias flux, const std::vector<double>& grid) {
  design.validate();
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "frequency grid is empty");
  const double lj = squid_inductance(design.josephson_inductance(), flux);
  const double f_limit = 1.2 * plasma_frequency(lj, design.josephson_capacitance);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid frequencies must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("grid not strictly increasing at index {}", i));
    }
    if (grid[i] >= f_limit) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("grid point {:.6g} Hz is above 1.2x the plasma frequency", grid[i]));
    }
  }

  ComplexTrace out;
  out.frequencies = grid;
  out.values.reserve(grid.size());
  for (double f : grid) {
    out.values.push_back(shorted_reflection(array_matrix(design, flux, f), design.port_impedance));
  }
  return out;
}

double reciprocity_defect(const ArrayDesign& design, FluxBias flux, double frequency_hz) {
  const double lj = squid_inductance(design.josephson_inductance(), flux);
  const double w = kTwoPi * frequency_hz;
  const AbcdMatrix cell = cell_matrix(design, lj, w);
  const AbcdMatrix center = center_matrix(design, w);

  double worst = 0.0;
  AbcdMatrix t = AbcdMatrix::identity();
  auto record = [&] { worst = std::max(worst, std::abs(t.determinant() - 1.0)); };
  for (int i = 0; i < design.n_squids / 2; ++i) {
    t = t * cell;
    record();
  }
  t = t * center;
  record();
  for (int i = 0; i < design.n_squids / 2; ++i) {
    t = t * cell;
    record();
  }
  return worst;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

}  // namespace jjal
