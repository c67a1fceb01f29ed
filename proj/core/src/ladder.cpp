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

#include "jjal/ladder.hpp"

#include <fmt/format.h>

#include "jjal/errors.hpp"

namespace jjal {

LadderMatrices uniform_chain_matrices(int n, double lj, double cj, double c0) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, fmt::format("chain length must be >= 1 (got {})", n));
  if (!(lj > 0.0) || !(cj > 0.0) || !(c0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "chain parameters must be positive");
  }
  LadderMatrices m;
  m.josephson_inductance = lj;
  m.capacitance = Eigen::MatrixXd::Zero(n, n);
  m.inverse_inductance = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m.capacitance(i, i) = 2.0 * cj + c0;
    m.inverse_inductance(i, i) = 2.0 / lj;
    if (i + 1 < n) {
      m.capacitance(i, i + 1) = m.capacitance(i + 1, i) = -cj;
      m.inverse_inductance(i, i + 1) = m.inverse_inductance(i + 1, i) = -1.0 / lj;
    }
  }
  return m;
}

LadderMatrices build_ladder_matrices(const ArrayDesign& design, FluxBias flux) {
  design.validate();
  const double lj = squid_inductance(design.josephson_inductance(), flux);
  const int n = design.n_squids;

  LadderMatrices m = uniform_chain_matrices(n, lj, design.josephson_capacitance,
                                            design.island_capacitance);

  const int a = n / 2 - 1;
  const int b = n / 2;
  const double cj = design.josephson_capacitance;
  const double cc = design.center_capacitance;
  const double c0p = design.center_ground_capacitance;

  m.capacitance(a, a) = m.capacitance(b, b) = cj + cc + c0p;
  m.capacitance(a, b) = m.capacitance(b, a) = -cc;
  m.inverse_inductance(a, a) = m.inverse_inductance(b, b) = 1.0 / lj;
  m.inverse_inductance(a, b) = m.inverse_inductance(b, a) = 0.0;
  return m;
}

}  // namespace jjal
