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

#include <numbers>

namespace jjal {

// SI values (2019 redefinition; h, e and kB are exact).
struct PhysicalConstants {
  static constexpr double planck = 6.62607015e-34;             // J s
  static constexpr double reduced_planck = planck / (2.0 * std::numbers::pi);
  static constexpr double electron_charge = 1.602176634e-19;   // C
  static constexpr double boltzmann = 1.380649e-23;            // J/K
  static constexpr double flux_quantum = planck / (2.0 * electron_charge);  // Wb
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace jjal
