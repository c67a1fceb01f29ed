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

#include "jjal/design.hpp"

#include <cmath>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/errors.hpp"

namespace jjal {

namespace {

constexpr double kFrustrationThreshold = 1e-9;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} must be positive and finite (got {})", name, value));
  }
}

}  // namespace

void ArrayDesign::validate() const {
  if (n_squids < 2 || n_squids % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("n_squids must be even and >= 2 (got {})", n_squids));
  }
  require_positive(critical_current, "critical_current");
  require_positive(josephson_capacitance, "josephson_capacitance");
  require_positive(island_capacitance, "island_capacitance");
  require_positive(center_capacitance, "center_capacitance");
  require_positive(center_ground_capacitance, "center_ground_capacitance");
  require_positive(port_impedance, "port_impedance");
  if (!(stray_inductance >= 0.0) || !std::isfinite(stray_inductance)) {
    throw Error(ErrorCode::InvalidArgument, "stray_inductance must be >= 0");
  }
}

double ArrayDesign::josephson_energy() const {
  return PhysicalConstants::flux_quantum * critical_current / kTwoPi;
}

double ArrayDesign::josephson_inductance() const {
  return PhysicalConstants::flux_quantum / (kTwoPi * critical_current);
}

double squid_inductance(double lj0, FluxBias flux) {
  require_positive(lj0, "lj0");
  const double c = std::abs(std::cos(std::numbers::pi * flux.phi));
  if (!(c > kFrustrationThreshold)) {
    throw Error(ErrorCode::FrustrationSingularity,
                fmt::format("SQUID fully frustrated at flux {} Phi0", flux.phi));
  }
  return lj0 / c;
}

double plasma_frequency(double lj, double cj) {
  require_positive(lj, "lj");
  require_positive(cj, "cj");
  return 1.0 / (kTwoPi * std::sqrt(lj * cj));
}

double plasma_frequency(const ArrayDesign& design) {
  design.validate();
  return plasma_frequency(design.josephson_inductance(), design.josephson_capacitance);
}

ArrayDesign reference_device(int index) {
  ArrayDesign d;
  d.center_ground_capacitance = 33e-15;
  d.port_impedance = 50.0;
  switch (index) {
    case 1:
      d.n_squids = 1200;
      d.critical_current = 6.0e-6;
      d.josephson_capacitance = 1080e-15;
      d.island_capacitance = 0.39e-15;
      d.center_capacitance = 30e-15;
      d.stray_inductance = 12.6e-12;
      d.resistance_asymmetry = 1.022;
      break;
    case 2:
      d.n_squids = 1600;
      d.critical_current = 3.0e-6;
      d.josephson_capacitance = 1050e-15;
      d.island_capacitance = 0.40e-15;
      d.center_capacitance = 40e-15;
      d.stray_inductance = 12.6e-12;
      d.resistance_asymmetry = 0.995;
      break;
    case 3:
      d.n_squids = 1800;
      d.critical_current = 2.3e-6;
      d.josephson_capacitance = 1050e-15;
      d.island_capacitance = 0.42e-15;
      d.center_capacitance = 45e-15;
      d.stray_inductance = 13.3e-12;
      d.resistance_asymmetry = 0.994;
      break;
    default:
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("reference device index must be 1, 2 or 3 (got {})", index));
  }
  return d;
}

}  // namespace jjal
