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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace jjal {

std::string_view version() noexcept;

/// One batch invocation. `options` holds the verb-specific flags as given on
/// the command line (e.g. "flux" -> "0.1"); they are parsed by the verb.
struct PipelineConfig {
  std::string command;  // dispersion, kerr, s11, fit-fluxmap, fit-dimer, fit-gain,
                        // noise-vis, calibrate, synth
  std::string verb;     // calibrate / synth sub-verb
  std::optional<std::filesystem::path> design;
  std::vector<std::filesystem::path> inputs;
  std::uint64_t seed = 0;
  std::string format = "csv";  // csv | json
  std::map<std::string, std::string> options;
};

struct OutputFile {
  std::string name;     // relative to the output directory
  std::string content;
};

/// Command echo, provenance (tool version, seed, SHA-256 of every input) and
/// the payload. `files` holds CSV tables when format is csv; with json the
/// tables are embedded in the payload instead.
struct ResultDocument {
  nlohmann::ordered_json document;
  std::vector<OutputFile> files;

  /// Two-space indented JSON with a trailing newline.
  std::string dump() const;
};

/// Dispatches to the module operations. Throws Error with the module's
/// category; InvalidArgument for unknown commands or malformed options.
ResultDocument run_pipeline(const PipelineConfig& config);

/// Writes result.json and every table under `dir`.
void write_outputs(const ResultDocument& result, const std::filesystem::path& dir);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Worker cap from JJAL_THREADS (default: hardware concurrency, at least 1).
unsigned worker_count();

}  // namespace jjal
