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

#include "jjal/design_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "jjal/errors.hpp"

namespace jjal {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view value, int line) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ConfigError,
                fmt::format("line {}: value for '{}' is not a number: '{}'", line, key, value));
  }
  return out;
}

}  // namespace

ArrayDesign parse_design_config(std::string_view text) {
  static const std::map<std::string, bool, std::less<>> kKnown = {
      {"n_squids", true}, {"ic_uA", true},      {"cj_fF", true},
      {"c0_fF", true},    {"cc_fF", true},      {"c0p_fF", true},
      {"lstray_pH", false}, {"z0_ohm", false},  {"asymmetry_m", false},
  };

  std::map<std::string, double, std::less<>> values;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, fmt::format("line {}: expected 'key = value'", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (kKnown.find(key) == kKnown.end()) {
      throw Error(ErrorCode::ConfigError, fmt::format("line {}: unknown key '{}'", line_no, key));
    }
    if (values.find(key) != values.end()) {
      throw Error(ErrorCode::ConfigError, fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
    values.emplace(std::string(key), parse_number(key, value, line_no));
  }

  for (const auto& [key, required] : kKnown) {
    if (required && values.find(key) == values.end()) {
      throw Error(ErrorCode::ConfigError, fmt::format("missing required key '{}'", key));
    }
  }

  const double n = values.at("n_squids");
  if (n != static_cast<double>(static_cast<int>(n))) {
    throw Error(ErrorCode::ConfigError, "n_squids must be an integer");
  }

  ArrayDesign d;
  d.n_squids = static_cast<int>(n);
  d.critical_current = values.at("ic_uA") * 1e-6;
  d.josephson_capacitance = values.at("cj_fF") * 1e-15;
  d.island_capacitance = values.at("c0_fF") * 1e-15;
  d.center_capacitance = values.at("cc_fF") * 1e-15;
  d.center_ground_capacitance = values.at("c0p_fF") * 1e-15;
  if (auto it = values.find("lstray_pH"); it != values.end()) d.stray_inductance = it->second * 1e-12;
  if (auto it = values.find("z0_ohm"); it != values.end()) d.port_impedance = it->second;
  if (auto it = values.find("asymmetry_m"); it != values.end()) d.resistance_asymmetry = it->second;

  try {
    d.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return d;
}

ArrayDesign load_design_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open design file '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_design_config(ss.str());
}

std::string format_design_config(const ArrayDesign& d) {
  std::string out;
  out += fmt::format("n_squids = {}\n", d.n_squids);
  out += fmt::format("ic_uA = {}\n", d.critical_current * 1e6);
  out += fmt::format("cj_fF = {}\n", d.josephson_capacitance * 1e15);
  out += fmt::format("c0_fF = {}\n", d.island_capacitance * 1e15);
  out += fmt::format("cc_fF = {}\n", d.center_capacitance * 1e15);
  out += fmt::format("c0p_fF = {}\n", d.center_ground_capacitance * 1e15);
  out += fmt::format("lstray_pH = {}\n", d.stray_inductance * 1e12);
  out += fmt::format("z0_ohm = {}\n", d.port_impedance);
  if (d.resistance_asymmetry) out += fmt::format("asymmetry_m = {}\n", *d.resistance_asymmetry);
  return out;
}

}  // namespace jjal
