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

#include <filesystem>
#include <string>
#include <string_view>

#include "jjal/design.hpp"

namespace jjal {

// Flat `key = value` design files in engineering units:
//
//   n_squids  = 1200
//   ic_uA     = 6.0
//   cj_fF     = 1080
//   c0_fF     = 0.39
//   cc_fF     = 30
//   c0p_fF    = 33
//   lstray_pH = 12.6     # optional, default 0
//   z0_ohm    = 50       # optional, default 50
//   asymmetry_m = 1.022  # optional metadata
//
// '#' starts a comment. Unknown or repeated keys are ConfigError.
ArrayDesign parse_design_config(std::string_view text);
ArrayDesign load_design_config(const std::filesystem::path& path);
std::string format_design_config(const ArrayDesign& design);

}  // namespace jjal
