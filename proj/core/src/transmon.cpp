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

#include "jjal/transmon.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

namespace {

// Work in units of h * 1 GHz to keep the matrices well scaled.
constexpr double kEnergyUnit = PhysicalConstants::planck * 1e9;

Eigen::MatrixXd charge_hamiltonian(const TransmonParams& p, int n_cut) {
  const int dim = 2 * n_cut + 1;
  const double ec = p.charging_energy / kEnergyUnit;
  const double ej = p.josephson_energy / kEnergyUnit;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n = static_cast<double>(i - n_cut) - p.gate_charge;
    h(i, i) = 4.0 * ec * n * n;
    if (i + 1 < dim) {
      h(i, i + 1) = -0.5 * ej;
      h(i + 1, i) = -0.5 * ej;
    }
  }
  return h;
}

Eigen::VectorXd charge_operator(const TransmonParams& p, int n_cut) {
  Eigen::VectorXd n(2 * n_cut + 1);
  for (int i = 0; i < n.size(); ++i) n(i) = static_cast<double>(i - n_cut) - p.gate_charge;
  return n;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_charge(const TransmonParams& p, int n_cut) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(charge_hamiltonian(p, n_cut));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "transmon diagonalization failed");
  return es;
}

double max_relative_shift(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int count, double floor) {
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    worst = std::max(worst, std::abs(a(k) - b(k)) / std::max(std::abs(b(k)), floor));
  }
  return worst;
}

}  // namespace

void TransmonParams::validate() const {
  if (!(josephson_energy >= 0.0) || !std::isfinite(josephson_energy)) {
    throw Error(ErrorCode::InvalidArgument, "E_J must be >= 0");
  }
  if (!(charging_energy > 0.0) || !std::isfinite(charging_energy)) {
    throw Error(ErrorCode::InvalidArgument, "E_c must be > 0");
  }
  if (charge_cutoff < 10) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("charge cutoff {} is below 10", charge_cutoff));
  }
}

std::vector<double> transmon_levels_charge_basis(const TransmonParams& p, int n_levels) {
  p.validate();
  if (n_levels < 1 || n_levels > 2 * p.charge_cutoff - 2) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} levels requested from cutoff {}", n_levels, p.charge_cutoff));
  }
  const double floor = p.charging_energy / kEnergyUnit;
  int n_cut = p.charge_cutoff;
  Eigen::VectorXd current = solve_charge(p, n_cut).eigenvalues();
  double shift = 0.0;
  for (int doubling = 0; doubling < 4; ++doubling) {
    n_cut *= 2;
    const Eigen::VectorXd next = solve_charge(p, n_cut).eigenvalues();
    shift = max_relative_shift(current, next, n_levels, floor);
    current = next;
    if (shift < 1e-10) break;
  }
  if (shift > 1e-8) {
    throw Error(ErrorCode::CutoffTooSmall,
                fmt::format("charge cutoff {} still shifts levels by {:.3g} relative", n_cut, shift));
  }
  std::vector<double> out(static_cast<std::size_t>(n_levels));
  for (int k = 0; k < n_levels; ++k) out[static_cast<std::size_t>(k)] = current(k) * kEnergyUnit;
  return out;
}

double transmon_levels_asymptotic(const TransmonParams& p, int k) {
  if (k < 0) throw Error(ErrorCode::IndexOutOfRange, "level index must be >= 0");
  const double ej = p.josephson_energy;
  const double ec = p.charging_energy;
  const double kk = static_cast<double>(k);
  return -ej + std::sqrt(8.0 * ej * ec) * (kk + 0.5) - ec / 12.0 * (6.0 * kk * kk + 6.0 * kk + 3.0);
}

double charge_matrix_element(const TransmonParams& p, int from, int to) {
  p.validate();
  const auto es = solve_charge(p, p.charge_cutoff);
  const Eigen::VectorXd n = charge_operator(p, p.charge_cutoff);
  const auto& v = es.eigenvectors();
  return std::abs(v.col(from).dot(n.cwiseProduct(v.col(to))));
}

namespace {

struct CoupledLevels {
  double g0, g1, g2, e0, e1;  // energy unit
};

CoupledLevels coupled_levels(const TransmonParams& q, const ResonatorParams& r, int fock) {
  const int n_cut = q.charge_cutoff;
  const int dq = 2 * n_cut + 1;
  const int dim = dq * fock;
  const Eigen::MatrixXd hq = charge_hamiltonian(q, n_cut);
  const Eigen::VectorXd nq = charge_operator(q, n_cut);
  const double wr = r.frequency / 1e9;                  // h * GHz
  const double g = r.coupling / kTwoPi / 1e9;           // hbar g in h * GHz

  // Index (charge i, photon k) -> i * fock + k.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dq; ++i) {
    for (int j = 0; j < dq; ++j) {
      if (hq(i, j) == 0.0) continue;
      for (int k = 0; k < fock; ++k) h(i * fock + k, j * fock + k) += hq(i, j);
    }
    for (int k = 0; k < fock; ++k) {
      h(i * fock + k, i * fock + k) += wr * k;
      if (k + 1 < fock) {
        const double c = g * nq(i) * std::sqrt(static_cast<double>(k + 1));
        h(i * fock + k, i * fock + k + 1) += c;
        h(i * fock + k + 1, i * fock + k) += c;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "coupled diagonalization failed");

  // Dressed state = eigenvector with the largest overlap on the bare product state.
  const auto bare = solve_charge(q, n_cut);
  auto dressed = [&](int level, int photons) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dq; ++i) b(i * fock + photons) = bare.eigenvectors()(i, level);
    Eigen::Index arg = 0;
    (es.eigenvectors().transpose() * b).cwiseAbs().maxCoeff(&arg);
    return es.eigenvalues()(arg);
  };
  return {dressed(0, 0), dressed(0, 1), fock > 2 ? dressed(0, 2) : 0.0, dressed(1, 0), dressed(1, 1)};
}

}  // namespace

DispersiveParams dispersive_shift(const TransmonParams& q, const ResonatorParams& r) {
  q.validate();
  if (!(r.frequency > 0.0)) throw Error(ErrorCode::InvalidArgument, "resonator frequency must be positive");
  if (!(r.coupling >= 0.0)) throw Error(ErrorCode::InvalidArgument, "coupling must be >= 0");

  const auto levels = transmon_levels_charge_basis(q, 3);
  const double h = PhysicalConstants::planck;
  const double hbar = PhysicalConstants::reduced_planck;

  DispersiveParams out;
  out.qubit_anharmonicity = (levels[2] - 2.0 * levels[1] + levels[0]) / hbar;
  const double wq = (levels[1] - levels[0]) / hbar;
  const double wr = kTwoPi * r.frequency;
  if (r.coupling > 0.1 * std::abs(wr - wq)) {
    out.warnings.push_back(fmt::format("NonDispersiveWarning: g/|Delta| = {:.3g}", r.coupling / std::abs(wr - wq)));
  }

  const double to_rad = kEnergyUnit / hbar;
  double chi_prev = 0.0;
  int fock = 5;
  for (;; fock *= 2) {
    const CoupledLevels c = coupled_levels(q, r, fock);
    const double chi = ((c.g1 - c.g0) - (c.e1 - c.e0)) * to_rad;
    out.chi = chi;
    out.qubit_frequency = (c.e0 - c.g0) * kEnergyUnit / h;
    out.resonator_frequency = (c.g1 - c.g0) * kEnergyUnit / h;
    out.resonator_anharmonicity = (c.g2 - 2.0 * c.g1 + c.g0) * to_rad;
    if (fock > 5 && std::abs(chi - chi_prev) < kTwoPi * 1e3) break;
    if (fock >= 40) {
      throw Error(ErrorCode::CutoffTooSmall, fmt::format("chi not stable to 1 kHz at Fock cutoff {}", fock));
    }
    chi_prev = chi;
  }
  out.fock_cutoff = fock;
  return out;
}

double perturbative_chi(double coupling, double qubit_anharmonicity, double qubit_omega, double resonator_omega) {
  const double delta = qubit_omega - resonator_omega;
  return std::abs(coupling * coupling * qubit_anharmonicity / (delta * (delta - qubit_anharmonicity)));
}

}  // namespace jjal
