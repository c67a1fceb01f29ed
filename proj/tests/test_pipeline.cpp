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

#include <cstdlib>
#include <filesystem>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jjal/pipeline.hpp"
#include "jjal/table_io.hpp"

namespace jjal {
namespace {

using test::code_of;
namespace fs = std::filesystem;

const fs::path kDesigns{JJAL_DESIGNS_DIR};

PipelineConfig config(std::string command, std::string verb = {}, std::map<std::string, std::string> opts = {}) {
  PipelineConfig c;
  c.command = std::move(command);
  c.verb = std::move(verb);
  c.options = std::move(opts);
  return c;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(Pipeline, DispersionListsFirstDimerOfSampleI) {
  PipelineConfig c = config("dispersion");
  c.design = kDesigns / "sampleI.cfg";
  const ResultDocument r = run_pipeline(c);
  const auto& first = r.document["payload"]["dimers"][0];
  EXPECT_NEAR(first["f_minus_ghz"].get<double>(), 2.061, 0.02 * 2.061);
  EXPECT_NEAR(first["f_plus_ghz"].get<double>(), 2.478, 0.02 * 2.478);
  EXPECT_EQ(r.document["provenance"]["inputs"][0]["role"], "design");
  EXPECT_EQ(r.document["provenance"]["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST(Pipeline, MeasurementPhotonsDeskNumber) {
  const ResultDocument r =
      run_pipeline(config("calibrate", "nmeas", {{"nbar", "150"}, {"kappa-mhz", "2.7"}, {"tm-ns", "500"}}));
  EXPECT_NEAR(r.document["payload"]["n_meas_photons"].get<double>(), 318.0, 1.0);
}

TEST(Pipeline, RejectsUnknownCommandsAndOptions) {
  EXPECT_EQ(code_of([] { run_pipeline(config("frobnicate")); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { run_pipeline(config("calibrate", "nope")); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { run_pipeline(config("calibrate", "flux", {{"power-dbm", "-118"}, {"freq-ghz", "5"},
                                                                  {"bogus", "1"}})); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { run_pipeline(config("calibrate", "flux", {{"power-dbm", "x"}, {"freq-ghz", "5"}})); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { run_pipeline(config("dispersion")); }), ErrorCode::InvalidArgument);
  PipelineConfig c = config("fit-gain");
  c.inputs = {"/nonexistent/gain.csv"};
  EXPECT_EQ(code_of([&] { run_pipeline(c); }), ErrorCode::IoError);
}

TEST(Pipeline, SynthThenFitIsByteIdentical) {
  TempDir dir("jjal_pipeline_determinism");
  PipelineConfig synth = config("synth", "fluxmap", {{"noise-hz", "2e6"}});
  synth.seed = 42;
  const ResultDocument s1 = run_pipeline(synth);
  const ResultDocument s2 = run_pipeline(synth);
  EXPECT_EQ(s1.dump(), s2.dump());
  ASSERT_EQ(s1.files.size(), 1u);
  EXPECT_EQ(s1.files[0].content, s2.files[0].content);
  write_outputs(s1, dir.path());

  PipelineConfig fit = config("fit-fluxmap");
  fit.inputs = {dir.path() / s1.files[0].name};
  const ResultDocument f1 = run_pipeline(fit);
  const ResultDocument f2 = run_pipeline(fit);
  EXPECT_EQ(f1.dump(), f2.dump());
  EXPECT_TRUE(f1.document["payload"]["fit"]["converged"].get<bool>());

  synth.seed = 43;
  EXPECT_NE(run_pipeline(synth).files[0].content, s1.files[0].content);
}

TEST(Pipeline, ThreadCountDoesNotChangeOutput) {
  PipelineConfig c = config("dispersion", {}, {{"flux", "0"}, {"flux-stop", "0.3"}, {"flux-steps", "4"}});
  c.design = kDesigns / "sampleI.cfg";
  ::setenv("JJAL_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  const std::string one = run_pipeline(c).dump();
  ::setenv("JJAL_THREADS", "4", 1);
  EXPECT_EQ(worker_count(), 4u);
  const std::string four = run_pipeline(c).dump();
  ::unsetenv("JJAL_THREADS");
  EXPECT_EQ(one, four);
}

TEST(Pipeline, JsonFormatEmbedsTablesAndRoundTrips) {
  PipelineConfig c = config("synth", "gain");
  c.format = "json";
  const ResultDocument r = run_pipeline(c);
  EXPECT_TRUE(r.files.empty());
  ASSERT_TRUE(r.document["payload"].contains("tables"));
  EXPECT_TRUE(r.document["payload"]["tables"]["gain"].contains("gain_db"));
  const auto parsed = nlohmann::ordered_json::parse(r.dump());
  EXPECT_EQ(parsed, r.document);
  EXPECT_EQ(parsed.dump(2) + "\n", r.dump());
}

TEST(Pipeline, OutputColumnsCarryUnits) {
  // Columns without a suffix are only allowed where an input format fixes them
  // or the quantity is dimensionless by definition.
  std::set<std::string> fixed{"eta"};
  for (const CsvSchema* s : {&schema::trace(), &schema::stark(), &schema::ramsey(), &schema::jumps(),
                             &schema::iq()}) {
    fixed.insert(s->columns.begin(), s->columns.end());
  }
  TempDir dir("jjal_pipeline_units");
  std::vector<PipelineConfig> runs;
  for (const char* verb : {"telegraph", "jumps", "resonance", "dimer", "fluxmap", "ramsey", "gain", "psd"}) {
    runs.push_back(config("synth", verb));
  }
  for (const char* cmd : {"dispersion", "kerr"}) {
    runs.push_back(config(cmd));
    runs.back().design = kDesigns / "sampleI.cfg";
  }
  runs.push_back(config("s11", {}, {{"start-ghz", "1.5"}, {"stop-ghz", "3"}}));
  runs.back().design = kDesigns / "sampleI.cfg";
  runs.push_back(config("calibrate", "transmon", {{"ej-ghz", "12.5"}, {"ec-ghz", "0.225"}}));
  std::size_t tables = 0;
  for (const auto& c : runs) {
    for (const OutputFile& f : run_pipeline(c).files) {
      const std::string header = f.content.substr(0, f.content.find('\n'));
      std::size_t start = 0;
      while (start <= header.size()) {
        const std::size_t comma = header.find(',', start);
        const std::string col = header.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        EXPECT_TRUE(col.find('_') != std::string::npos || fixed.count(col)) << f.name << ": " << col;
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      ++tables;
    }
  }
  EXPECT_GE(tables, 14u);
}

TEST(Pipeline, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace jjal
