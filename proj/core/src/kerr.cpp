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

#include "jjal/kerr.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

ModeSpectrum symmetrize_modes(const ModeSpectrum& spectrum) {
  ModeSpectrum out = spectrum;
  if (spectrum.symmetrized) return out;
  const Eigen::Index n = spectrum.size();
  const Eigen::Index half = n / 2;
  for (Eigen::Index m = 0; m < n; ++m) {
    if (spectrum.mirror_class[static_cast<std::size_t>(m)] != MirrorClass::Antisymmetric) continue;
    out.node_fluxes.col(m).tail(n - half) *= -1.0;
    out.eigenvectors.col(m) = out.sqrt_capacitance * out.node_fluxes.col(m);
  }
  out.symmetrized = true;
  return out;
}

Eigen::MatrixXd bond_amplitudes(const ModeSpectrum& spectrum, double josephson_capacitance,
                                Eigen::Index mode_count) {
  const Eigen::Index n = spectrum.size();
  if (mode_count < 0 || mode_count > n) {
    throw Error(ErrorCode::IndexOutOfRange, fmt::format("mode count {} outside [0, {}]", mode_count, n));
  }
  // Phi = C^{-1/2} Psi, padded with the grounded boundary nodes.
  const Eigen::MatrixXd phi =
      spectrum.inverse_sqrt_capacitance * spectrum.eigenvectors.leftCols(mode_count);
  Eigen::MatrixXd x(n + 1, mode_count);
  x.row(0) = phi.row(0);
  for (Eigen::Index i = 1; i < n; ++i) x.row(i) = phi.row(i) - phi.row(i - 1);
  x.row(n) = -phi.row(n - 1);
  return std::sqrt(josephson_capacitance) * x;
}

double eta_factor(const ModeSpectrum& spectrum, double josephson_capacitance, int m, int k) {
  const Eigen::Index n = spectrum.size();
  if (m < 0 || k < 0 || m >= n || k >= n) {
    throw Error(ErrorCode::IndexOutOfRange, fmt::format("mode pair ({}, {}) outside [0, {})", m, k, n));
  }
  const Eigen::MatrixXd x = bond_amplitudes(spectrum, josephson_capacitance, std::max(m, k) + 1);
  return (x.col(m).array().square() * x.col(k).array().square()).sum();
}

KerrTensor kerr_coefficients(const ArrayDesign& design, const ModeSpectrum& spectrum, int retained) {
  design.validate();
  if (retained < 1 || retained > spectrum.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                fmt::format("retained mode count {} outside [1, {}]", retained, spectrum.size()));
  }
  const ModeSpectrum sym = spectrum.symmetrized ? spectrum : symmetrize_modes(spectrum);

  const double cj = design.josephson_capacitance;
  const Eigen::MatrixXd x2 = bond_amplitudes(sym, cj, retained).array().square().matrix();

  KerrTensor t;
  t.retained_mode_count = retained;
  t.eta = x2.transpose() * x2;
  t.eta = 0.5 * (t.eta + t.eta.transpose()).eval();

  constexpr double pi4 = std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi;
  const double phi0 = PhysicalConstants::flux_quantum;
  const double prefactor = PhysicalConstants::reduced_planck * pi4 * design.josephson_energy() /
                           (phi0 * phi0 * phi0 * phi0 * cj * cj);

  const Eigen::VectorXd w = sym.angular_frequencies.head(retained);
  t.self_kerr.resize(retained);
  t.cross_kerr.resize(retained, retained);
  for (int m = 0; m < retained; ++m) {
    t.self_kerr(m) = 2.0 * prefactor * t.eta(m, m) / (w(m) * w(m));
    for (int k = 0; k < retained; ++k) {
      t.cross_kerr(m, k) = 4.0 * prefactor * t.eta(m, k) / (w(m) * w(k));
    }
  }
  return t;
}

}  // namespace jjal
