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

#include "jjal/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "jjal/errors.hpp"

namespace jjal {

namespace schema {
const CsvSchema& trace() {
  static const CsvSchema s{"trace", {"freq_hz", "re", "im"}};
  return s;
}
const CsvSchema& flux_map() {
  static const CsvSchema s{"flux map", {"bias_current_a", "freq_hz"}};
  return s;
}
const CsvSchema& gain() {
  static const CsvSchema s{"gain", {"freq_hz", "gain_db"}};
  return s;
}
const CsvSchema& psd() {
  static const CsvSchema s{"power spectral density", {"freq_hz", "psd_dbm_per_hz"}};
  return s;
}
const CsvSchema& stark() {
  static const CsvSchema s{"Stark", {"amp2", "f_r_hz"}};
  return s;
}
const CsvSchema& ramsey() {
  static const CsvSchema s{"Ramsey", {"delay_s", "signal"}};
  return s;
}
const CsvSchema& jumps() {
  static const CsvSchema s{"jump record", {"t_s", "q"}};
  return s;
}
const CsvSchema& iq() {
  static const CsvSchema s{"IQ record", {"t_s", "i", "q"}};
  return s;
}
}  // namespace schema

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    out.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// "freq_hz" -> ("freq", "hz"); no suffix -> (name, "").
std::pair<std::string, std::string> split_unit(const std::string& column) {
  const std::size_t us = column.find('_');
  if (us == std::string::npos) return {column, ""};
  return {column.substr(0, us), column.substr(us + 1)};
}

void check_header(const std::vector<std::string>& got, const CsvSchema& expected) {
  const std::string want = fmt::format("{}", fmt::join(expected.columns, ","));
  if (got.size() != expected.columns.size()) {
    throw Error(ErrorCode::SchemaMismatch,
                fmt::format("{} header '{}' does not match expected '{}'", expected.name, fmt::join(got, ","), want));
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i] == expected.columns[i]) continue;
    const auto [g_base, g_unit] = split_unit(got[i]);
    const auto [e_base, e_unit] = split_unit(expected.columns[i]);
    if (g_base == e_base && !g_unit.empty() && !e_unit.empty()) {
      throw Error(ErrorCode::UnitError, fmt::format("{} column '{}' has unit '{}', expected '{}'", expected.name,
                                                    got[i], g_unit, expected.columns[i]));
    }
    throw Error(ErrorCode::SchemaMismatch, fmt::format("{} header column '{}' does not match expected '{}' (in '{}')",
                                                       expected.name, got[i], expected.columns[i], want));
  }
}

double parse_number(const std::string& field, std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw Error(ErrorCode::SchemaMismatch,
                fmt::format("line {}: column '{}' value '{}' is not a number", line, column, field));
  }
  return v;
}

}  // namespace

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return data[i];
  }
  throw Error(ErrorCode::IndexOutOfRange, fmt::format("table has no column '{}'", name));
}

Table parse_table(const std::string& text, const CsvSchema& expected, std::size_t min_rows) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  Table t;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      check_header(fields, expected);
      t.columns = expected.columns;
      t.data.assign(t.columns.size(), {});
      have_header = true;
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw Error(ErrorCode::SchemaMismatch,
                  fmt::format("line {}: expected {} fields, found {}", line_no, t.columns.size(), fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) t.data[c].push_back(parse_number(fields[c], line_no, t.columns[c]));
  }
  if (!have_header) throw Error(ErrorCode::EmptyFile, fmt::format("{} input is empty", expected.name));
  if (t.rows() == 0) throw Error(ErrorCode::EmptyFile, fmt::format("{} input has a header but no rows", expected.name));
  if (t.rows() < min_rows) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("{} input has {} rows, at least {} needed", expected.name, t.rows(), min_rows));
  }
  return t;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write to '{}' failed", path.string()));
}

Table load_table(const std::filesystem::path& path, const CsvSchema& expected, std::size_t min_rows) {
  return parse_table(read_text_file(path), expected, min_rows);
}

std::string format_table(const Table& table) {
  std::string out = fmt::format("{}\n", fmt::join(table.columns, ","));
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) out += ',';
      out += fmt::format("{}", table.data[c][r]);
    }
    out += '\n';
  }
  return out;
}

ComplexTrace table_to_trace(const Table& t) {
  ComplexTrace trace;
  trace.frequencies = t.data[0];
  for (std::size_t r = 0; r < t.rows(); ++r) trace.values.emplace_back(t.data[1][r], t.data[2][r]);
  trace.validate();
  return trace;
}

Table trace_to_table(const ComplexTrace& trace) {
  Table t{schema::trace().columns, {trace.frequencies, {}, {}}};
  for (const auto& v : trace.values) {
    t.data[1].push_back(v.real());
    t.data[2].push_back(v.imag());
  }
  return t;
}

std::vector<FluxSample> table_to_flux_map(const Table& t) {
  std::vector<FluxSample> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.data[0][r], t.data[1][r]});
  return out;
}

std::vector<GainSample> table_to_gain(const Table& t) {
  std::vector<GainSample> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.data[0][r], t.data[1][r]});
  return out;
}

std::vector<SpectrumSample> table_to_psd(const Table& t) {
  std::vector<SpectrumSample> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.data[0][r], t.data[1][r]});
  return out;
}

std::vector<StarkPoint> table_to_stark(const Table& t) {
  std::vector<StarkPoint> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.data[0][r], t.data[1][r]});
  return out;
}

std::vector<RamseySample> table_to_ramsey(const Table& t) {
  std::vector<RamseySample> out;
  for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.data[0][r], t.data[1][r]});
  return out;
}

}  // namespace jjal
