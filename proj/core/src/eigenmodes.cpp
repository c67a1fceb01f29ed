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

#include "jjal/eigenmodes.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

namespace {

void check_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix must be square and non-empty");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("matrix is not symmetric (relative asymmetry {:.3g})", asym / scale));
  }
}

// Largest-magnitude entry of each column made positive.
void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

}  // namespace

SpdRoots spd_roots(const Eigen::MatrixXd& a) {
  check_symmetric(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "eigendecomposition failed");
  }
  const Eigen::VectorXd& w = es.eigenvalues();
  if (!(w.minCoeff() > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                fmt::format("smallest eigenvalue {:.6g} is not positive", w.minCoeff()));
  }
  const Eigen::MatrixXd& u = es.eigenvectors();
  SpdRoots out;
  out.sqrt = u * w.cwiseSqrt().asDiagonal() * u.transpose();
  out.inverse_sqrt = u * w.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  // Exact symmetry; the products above are symmetric only to rounding.
  out.sqrt = 0.5 * (out.sqrt + out.sqrt.transpose()).eval();
  out.inverse_sqrt = 0.5 * (out.inverse_sqrt + out.inverse_sqrt.transpose()).eval();
  return out;
}

Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& a) {
  return spd_roots(a).inverse_sqrt;
}

double mirror_overlap(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) return 0.0;
  return v.dot(v.reverse()) / norm2;
}

double ModeSpectrum::frequency_hz(Eigen::Index m) const {
  return angular_frequencies(m) / kTwoPi;
}

ModeSpectrum solve_modes(const LadderMatrices& matrices) {
  check_symmetric(matrices.inverse_inductance);
  SpdRoots roots = spd_roots(matrices.capacitance);

  Eigen::MatrixXd dynamical =
      roots.inverse_sqrt * matrices.inverse_inductance * roots.inverse_sqrt;
  dynamical = 0.5 * (dynamical + dynamical.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dynamical);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "mode eigendecomposition failed");
  }

  ModeSpectrum s;
  s.angular_frequencies = es.eigenvalues().unaryExpr([](double w2) { return std::sqrt(std::max(w2, 0.0)); });
  s.eigenvectors = es.eigenvectors();
  fix_signs(s.eigenvectors);
  s.node_fluxes = roots.inverse_sqrt * s.eigenvectors;
  s.sqrt_capacitance = std::move(roots.sqrt);
  s.inverse_sqrt_capacitance = std::move(roots.inverse_sqrt);

  s.mirror_class.reserve(static_cast<std::size_t>(s.size()));
  for (Eigen::Index m = 0; m < s.size(); ++m) {
    s.mirror_class.push_back(mirror_overlap(s.node_fluxes.col(m)) < 0.0 ? MirrorClass::Antisymmetric
                                                                       : MirrorClass::Symmetric);
  }
  return s;
}

ModeSpectrum solve_modes(const ArrayDesign& design, FluxBias flux) {
  ModeSpectrum s = solve_modes(build_ladder_matrices(design, flux));
  s.design = design;
  s.flux = flux;
  return s;
}

std::vector<DimerRecord> pair_dimers(const ModeSpectrum& spectrum, double f_max_hz) {
  if (!(f_max_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "f_max must be positive");
  if (spectrum.design) {
    const double f_pl = plasma_frequency(*spectrum.design);
    if (f_max_hz > f_pl * (1.0 + 1e-12)) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("f_max {:.6g} Hz exceeds the plasma frequency {:.6g} Hz", f_max_hz, f_pl));
    }
  }

  Eigen::Index below = 0;
  while (below < spectrum.size() && spectrum.frequency_hz(below) < f_max_hz) ++below;
  if (below % 2 != 0) {
    throw Error(ErrorCode::OddModeCount,
                fmt::format("{} modes below {:.6g} Hz; mode {} has no partner", below, f_max_hz, below - 1));
  }

  std::vector<DimerRecord> dimers;
  for (Eigen::Index m = 0; m + 1 < below; m += 2) {
    DimerRecord d;
    d.dimer_index = static_cast<int>(m / 2);
    d.lower_frequency = spectrum.angular_frequencies(m);
    d.upper_frequency = spectrum.angular_frequencies(m + 1);
    d.half_splitting = 0.5 * (d.upper_frequency - d.lower_frequency);
    d.mode_indices = {static_cast<int>(m), static_cast<int>(m + 1)};
    dimers.push_back(d);
  }
  return dimers;
}

}  // namespace jjal
