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

#include "jjal/design.hpp"
#include "jjal/errors.hpp"

namespace jjal::test {

/// Short dimerized array with the sample-I junction parameters.
inline ArrayDesign small_design(int n) {
  ArrayDesign d;
  d.n_squids = n;
  d.critical_current = 6.0e-6;
  d.josephson_capacitance = 1080e-15;
  d.island_capacitance = 0.39e-15;
  d.center_capacitance = 30e-15;
  d.center_ground_capacitance = 33e-15;
  d.stray_inductance = 0.0;
  d.port_impedance = 50.0;
  return d;
}

/// Category of the Error thrown by `f`, or 0 when nothing is thrown.
template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace jjal::test
