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
#include <vector>

#include "jjal/fits.hpp"
#include "jjal/readout.hpp"
#include "jjal/scattering.hpp"

namespace jjal {

/// Exact header of a CSV input; every column carries a unit suffix.
struct CsvSchema {
  std::string name;
  std::vector<std::string> columns;
};

namespace schema {
const CsvSchema& trace();     // freq_hz,re,im
const CsvSchema& flux_map();  // bias_current_a,freq_hz
const CsvSchema& gain();      // freq_hz,gain_db
const CsvSchema& psd();       // freq_hz,psd_dbm_per_hz
const CsvSchema& stark();     // amp2,f_r_hz
const CsvSchema& ramsey();    // delay_s,signal
const CsvSchema& jumps();     // t_s,q
const CsvSchema& iq();        // t_s,i,q
}  // namespace schema

/// Column-major numeric table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[column][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
};

/// Parses CSV text against `expected`. Errors: EmptyFile (no header or no
/// rows), UnitError (a column has the right quantity but another unit
/// suffix), SchemaMismatch (any other header difference, or a malformed row;
/// messages name the header or the line number), InsufficientData (fewer than
/// `min_rows` rows).
Table parse_table(const std::string& text, const CsvSchema& expected, std::size_t min_rows = 1);

/// Reads a file and parses it. Throws IoError if it cannot be read.
Table load_table(const std::filesystem::path& path, const CsvSchema& expected, std::size_t min_rows = 1);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Renders columns with a header; values in shortest round-trip form.
std::string format_table(const Table& table);

ComplexTrace table_to_trace(const Table& t);
Table trace_to_table(const ComplexTrace& trace);

std::vector<FluxSample> table_to_flux_map(const Table& t);
std::vector<GainSample> table_to_gain(const Table& t);
std::vector<SpectrumSample> table_to_psd(const Table& t);
std::vector<StarkPoint> table_to_stark(const Table& t);
std::vector<RamseySample> table_to_ramsey(const Table& t);

}  // namespace jjal
