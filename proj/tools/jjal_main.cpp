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

// jjal: batch front end for array design, scattering, fits and readout
// calibration. Exit codes: 0 success, ErrorCode value on a domain error,
// 64 on a command-line usage error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jjal/errors.hpp"
#include "jjal/pipeline.hpp"

namespace {

struct VerbSpec {
  const char* name;
  const char* help;
  std::vector<const char*> options;
  const char* inputs;  // nullptr: takes no input files
};

const std::vector<VerbSpec>& command_specs() {
  static const std::vector<VerbSpec> specs{
      {"dispersion", "eigenmodes and dimers of the ladder", {"flux", "flux-stop", "flux-steps", "fmax-ghz"}, nullptr},
      {"kerr", "self- and cross-Kerr tables", {"flux", "retained"}, nullptr},
      {"s11", "reflection sweep and resonance summary", {"flux", "start-ghz", "stop-ghz", "step-mhz"}, nullptr},
      {"fit-fluxmap", "flux modulation fit of a bias_current_a,freq_hz CSV",
       {"f0-ghz", "gamma-l", "lb-per-a", "offset-ma"}, "flux map CSV"},
      {"fit-dimer", "dimer reflection fit of a freq_hz,re,im CSV", {}, "trace CSV"},
      {"fit-gain", "Lorentzian gain-lobe fit of a freq_hz,gain_db CSV", {}, "gain CSV"},
      {"noise-vis", "pump-on minus pump-off PSD", {}, "pump-on and pump-off PSD CSVs"},
  };
  return specs;
}

const std::vector<VerbSpec>& calibrate_specs() {
  static const std::vector<VerbSpec> specs{
      {"transmon", "charge-basis and asymptotic transmon levels", {"ej-ghz", "ec-ghz", "ng", "ncut", "levels"}, nullptr},
      {"chi", "dispersive shift from the coupled Hamiltonian",
       {"ej-ghz", "ec-ghz", "ng", "ncut", "fr-ghz", "g-mhz", "kappa-mhz"}, nullptr},
      {"nmeas", "measurement photon number", {"nbar", "kappa-mhz", "gamma-mhz", "tm-ns"}, nullptr},
      {"flux", "photon flux of a tone", {"power-dbm", "freq-ghz"}, nullptr},
      {"stark", "AC-Stark photon calibration", {"f-r0-hz", "chi-khz"}, "amp2,f_r_hz CSV"},
      {"ramsey", "damped-cosine Ramsey fit", {"mode"}, "delay_s,signal CSV"},
      {"jumps", "latching-filter state assignment",
       {"means", "sigma", "dwell-bin", "sigma-photons", "line-efficiency"}, "t_s,q CSV"},
      {"temp", "qubit temperature from level populations", {}, "populations JSON"},
  };
  return specs;
}

const std::vector<VerbSpec>& synth_specs() {
  static const std::vector<VerbSpec> specs{
      {"telegraph", "two-state jump record",
       {"samples", "mean-g", "mean-e", "sigma", "p-up", "p-down", "dt-us"}, nullptr},
      {"jumps", "fidelity-calibrated jump record", {"sigma", "fidelity", "t1-us", "dt-us", "ratio", "samples"}, nullptr},
      {"resonance", "single resonator trace", {"f0-ghz", "kappa-mhz", "noise", "start-ghz", "stop-ghz", "step-mhz"},
       nullptr},
      {"dimer", "dimer reflection trace",
       {"center-ghz", "split-mhz", "kappa-plus-mhz", "kappa-minus-mhz", "gamma-plus-mhz", "gamma-minus-mhz", "phase",
        "noise", "start-ghz", "stop-ghz", "step-mhz"},
       nullptr},
      {"fluxmap", "flux modulation map", {"f0-ghz", "gamma-l", "lb-per-a", "offset-ma", "i-min-a", "i-max-a", "points",
                                          "noise-hz"},
       nullptr},
      {"ramsey", "Ramsey fringes", {"amplitude", "f-mhz", "amplitude2", "f2-mhz", "t2-us", "offset", "tmax-us",
                                    "points", "noise"},
       nullptr},
      {"gain", "gain lobe with fixed gain-bandwidth product",
       {"gain-db", "product-mhz", "center-ghz", "noise-db"}, nullptr},
      {"psd", "pump-on and pump-off noise spectra",
       {"floor-dbm", "bump-db", "center-ghz", "width-mhz", "ripple-db", "start-ghz", "stop-ghz", "step-mhz"}, nullptr},
  };
  return specs;
}

struct Selection {
  std::string command;
  std::string verb;
  std::map<std::string, std::string> options;
  std::vector<std::string> inputs;
};

// Registers one subcommand whose options are collected as strings.
CLI::App* add_verb(CLI::App& parent, const VerbSpec& entry, Selection& sel, std::map<std::string, std::string>& store,
                   std::vector<std::string>& inputs, const std::string& command) {
  CLI::App* sub = parent.add_subcommand(entry.name, entry.help);
  for (const char* opt : entry.options) {
    sub->add_option_function<std::string>(std::string("--") + opt,
                                          [&store, key = std::string(opt)](const std::string& v) { store[key] = v; });
  }
  if (entry.inputs != nullptr) sub->add_option("inputs", inputs, entry.inputs)->required();
  sub->callback([&sel, command, verb = std::string(entry.name), &parent] {
    sel.command = command.empty() ? verb : command;
    sel.verb = command.empty() ? "" : verb;
    (void)parent;
  });
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jjal: dimerized Josephson junction array amplifier toolkit"};
  app.set_version_flag("--version", std::string(jjal::version()));
  app.require_subcommand(1);

  std::string design;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string format = "csv";
  app.add_option("--design", design, "design file (key = value)");
  app.add_option("--out", out_dir, "output directory; result.json is printed when omitted");
  app.add_option("--seed", seed, "seed for synthetic generators");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  Selection sel;
  std::map<std::string, std::string> store;
  std::vector<std::string> inputs;

  for (const auto& entry : command_specs()) add_verb(app, entry, sel, store, inputs, "")->fallthrough();
  CLI::App* calibrate = app.add_subcommand("calibrate", "readout and qubit calibration");
  calibrate->require_subcommand(1)->fallthrough();
  for (const auto& entry : calibrate_specs()) add_verb(*calibrate, entry, sel, store, inputs, "calibrate")->fallthrough();
  CLI::App* synth = app.add_subcommand("synth", "seeded synthetic data");
  synth->require_subcommand(1)->fallthrough();
  for (const auto& entry : synth_specs()) add_verb(*synth, entry, sel, store, inputs, "synth")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  jjal::PipelineConfig config;
  config.command = sel.command;
  config.verb = sel.verb;
  if (!design.empty()) config.design = design;
  for (const auto& in : inputs) config.inputs.emplace_back(in);
  config.seed = seed;
  config.format = format;
  config.options = store;

  try {
    const jjal::ResultDocument result = jjal::run_pipeline(config);
    if (out_dir.empty()) {
      std::cout << result.dump();
      if (!result.files.empty()) {
        std::cerr << "note: " << result.files.size() << " table(s) not written; pass --out to keep them\n";
      }
    } else {
      jjal::write_outputs(result, out_dir);
    }
  } catch (const jjal::Error& e) {
    std::cerr << "jjal: error [" << jjal::to_string(e.code()) << "]: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "jjal: error [" << jjal::to_string(jjal::ErrorCode::IoError) << "]: " << e.what() << "\n";
    return static_cast<int>(jjal::ErrorCode::IoError);
  }
  return 0;
}
