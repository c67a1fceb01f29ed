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

#include "jjal/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <openssl/evp.h>

#include "jjal/constants.hpp"
#include "jjal/design_config.hpp"
#include "jjal/eigenmodes.hpp"
#include "jjal/errors.hpp"
#include "jjal/fits.hpp"
#include "jjal/jump_filter.hpp"
#include "jjal/kerr.hpp"
#include "jjal/readout.hpp"
#include "jjal/scattering.hpp"
#include "jjal/synth.hpp"
#include "jjal/table_io.hpp"
#include "jjal/transmon.hpp"

#ifndef JJAL_VERSION
#define JJAL_VERSION "0.0.0"
#endif

namespace jjal {

using json = nlohmann::ordered_json;

std::string_view version() noexcept { return JJAL_VERSION; }

std::string ResultDocument::dump() const { return document.dump(2) + "\n"; }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("JJAL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

namespace {

// Runs body(i) for i in [0, n) on up to worker_count() threads. Results are
// written by index; the first failure by index is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(worker_count(), n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

class Options {
 public:
  explicit Options(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double number(const std::string& key, std::optional<double> fallback = {}) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (fallback) return *fallback;
      throw Error(ErrorCode::InvalidArgument, fmt::format("missing required option --{}", key));
    }
    return parse(key, it->second);
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = {}) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (fallback) return *fallback;
      throw Error(ErrorCode::InvalidArgument, fmt::format("missing required option --{}", key));
    }
    return it->second;
  }

  std::vector<double> numbers(const std::string& key) {
    const std::string raw = text(key);
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
      const std::size_t comma = raw.find(',', start);
      out.push_back(parse(key, raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  /// Rejects options the verb did not read.
  void finish() const {
    for (const auto& [k, v] : values_) {
      if (!used_.count(k)) throw Error(ErrorCode::InvalidArgument, fmt::format("unknown option --{}", k));
    }
  }

 private:
  static double parse(const std::string& key, const std::string& raw) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(raw, &pos);
      if (pos == raw.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, fmt::format("option --{}: '{}' is not a number", key, raw));
  }

  const std::map<std::string, std::string>& values_;
  std::set<std::string> used_;
};

struct Context {
  const PipelineConfig& config;
  Options opts;
  json payload = json::object();
  std::vector<OutputFile> files;

  void table(const std::string& name, const Table& t) {
    if (config.format == "json") {
      json cols = json::object();
      for (std::size_t c = 0; c < t.columns.size(); ++c) cols[t.columns[c]] = t.data[c];
      payload["tables"][name] = std::move(cols);
    } else {
      files.push_back({name + ".csv", format_table(t)});
      payload["files"].push_back(name + ".csv");
    }
  }

  const std::filesystem::path& input(std::size_t i, const char* what) const {
    if (config.inputs.size() <= i) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("missing input file: {}", what));
    }
    return config.inputs[i];
  }

  ArrayDesign design() {
    if (!config.design) throw Error(ErrorCode::InvalidArgument, "this command needs --design");
    ArrayDesign d = load_design_config(*config.design);
    json echo{{"n_squids", d.n_squids},
              {"josephson_inductance_ph", d.josephson_inductance() * 1e12},
              {"plasma_frequency_ghz", plasma_frequency(d) / 1e9}};
    if (d.resistance_asymmetry) echo["asymmetry_m"] = *d.resistance_asymmetry;
    payload["design"] = echo;
    return d;
  }
};

json fit_json(const FitResult& fit) {
  json params = json::object();
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double se = fit.standard_errors(k);
    params[fit.names[i]] = {{"value", fit.parameters(k)},
                            {"std_error", std::isfinite(se) ? json(se) : json(nullptr)}};
  }
  return {{"parameters", params},
          {"residual_rms", fit.residual_rms},
          {"iterations", fit.iterations},
          {"converged", fit.converged},
          {"warnings", fit.warnings}};
}

std::vector<double> flux_points(Options& o) {
  const double start = o.number("flux", 0.0);
  if (!o.has("flux-stop")) return {start};
  const double stop = o.number("flux-stop");
  const auto steps = static_cast<std::size_t>(o.number("flux-steps", 11.0));
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "--flux-steps must be >= 2");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return out;
}

// ---- commands -------------------------------------------------------------

void cmd_dispersion(Context& ctx) {
  const ArrayDesign d = ctx.design();
  const std::vector<double> fluxes = flux_points(ctx.opts);
  const double f_max = ctx.opts.number("fmax-ghz", 10.0) * 1e9;
  const double f_cap = std::min(f_max, plasma_frequency(d));

  std::vector<ModeSpectrum> spectra(fluxes.size());
  parallel_for(fluxes.size(), [&](std::size_t i) { spectra[i] = solve_modes(d, FluxBias{fluxes[i]}); });

  Table modes{{"flux_phi0", "mode_index", "freq_ghz"}, {{}, {}, {}}};
  Table dimers{{"flux_phi0", "dimer_index", "f_minus_ghz", "f_plus_ghz", "two_j_mhz"}, {{}, {}, {}, {}, {}}};
  json rows = json::array();
  for (std::size_t i = 0; i < fluxes.size(); ++i) {
    const auto& s = spectra[i];
    for (Eigen::Index m = 0; m < s.size() && s.frequency_hz(m) < f_cap; ++m) {
      modes.data[0].push_back(fluxes[i]);
      modes.data[1].push_back(static_cast<double>(m));
      modes.data[2].push_back(s.frequency_hz(m) / 1e9);
    }
    for (const auto& dm : pair_dimers(s, f_cap)) {
      dimers.data[0].push_back(fluxes[i]);
      dimers.data[1].push_back(dm.dimer_index);
      dimers.data[2].push_back(dm.lower_frequency / kTwoPi / 1e9);
      dimers.data[3].push_back(dm.upper_frequency / kTwoPi / 1e9);
      dimers.data[4].push_back(2.0 * dm.half_splitting / kTwoPi / 1e6);
      rows.push_back({{"flux_phi0", fluxes[i]},
                      {"dimer_index", dm.dimer_index},
                      {"f_minus_ghz", dm.lower_frequency / kTwoPi / 1e9},
                      {"f_plus_ghz", dm.upper_frequency / kTwoPi / 1e9},
                      {"two_j_mhz", 2.0 * dm.half_splitting / kTwoPi / 1e6}});
    }
  }
  ctx.payload["plasma_frequency_ghz"] = plasma_frequency(d) / 1e9;
  ctx.payload["dimers"] = rows;
  ctx.table("modes", modes);
  ctx.table("dimers", dimers);
}

void cmd_kerr(Context& ctx) {
  const ArrayDesign d = ctx.design();
  const double flux = ctx.opts.number("flux", 0.0);
  const int retained = static_cast<int>(ctx.opts.number("retained", 12.0));
  const ModeSpectrum s = solve_modes(d, FluxBias{flux});
  const KerrTensor k = kerr_coefficients(d, s, retained);

  Table self{{"mode_index", "freq_ghz", "self_kerr_khz"}, {{}, {}, {}}};
  Table cross{{"mode_m", "mode_k", "eta", "k_mk_khz", "diagonal_flag"}, {{}, {}, {}, {}, {}}};
  for (int m = 0; m < retained; ++m) {
    self.data[0].push_back(m);
    self.data[1].push_back(s.frequency_hz(m) / 1e9);
    self.data[2].push_back(k.self_kerr(m) / 1e3);
    for (int n = m; n < retained; ++n) {
      cross.data[0].push_back(m);
      cross.data[1].push_back(n);
      cross.data[2].push_back(k.eta(m, n));
      cross.data[3].push_back(k.cross_kerr(m, n) / 1e3);
      cross.data[4].push_back(m == n ? 1.0 : 0.0);
    }
  }
  ctx.payload["flux_phi0"] = flux;
  ctx.payload["retained_modes"] = retained;
  ctx.payload["self_kerr_khz"] = std::vector<double>(self.data[2]);
  ctx.payload["units_note"] = "K/2pi in kHz; k_mk_khz diagonal entries equal 2 K_mm";
  ctx.table("self_kerr", self);
  ctx.table("cross_kerr", cross);
}

void cmd_s11(Context& ctx) {
  const ArrayDesign d = ctx.design();
  const double flux = ctx.opts.number("flux", 0.0);
  const double start = ctx.opts.number("start-ghz", 0.5) * 1e9;
  const double stop = ctx.opts.number("stop-ghz", 10.0) * 1e9;
  const double step = ctx.opts.number("step-mhz", 1.0) * 1e6;
  const std::vector<double> grid = linear_grid(start, stop, step);

  std::vector<Complex> values(grid.size());
  const std::size_t chunk = 256;
  const std::size_t chunks = (grid.size() + chunk - 1) / chunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(grid.size(), lo + chunk);
    const std::vector<double> part(grid.begin() + static_cast<std::ptrdiff_t>(lo),
                                   grid.begin() + static_cast<std::ptrdiff_t>(hi));
    const ComplexTrace t = s11_sweep(d, FluxBias{flux}, part);
    std::copy(t.values.begin(), t.values.end(), values.begin() + static_cast<std::ptrdiff_t>(lo));
  });
  ComplexTrace trace;
  trace.frequencies = grid;
  trace.values = std::move(values);

  Table res{{"f0_ghz", "kappa_mhz"}, {{}, {}}};
  json rows = json::array();
  try {
    for (const auto& r : extract_resonances(trace)) {
      res.data[0].push_back(r.center_frequency / 1e9);
      res.data[1].push_back(r.kappa / 1e6);
      rows.push_back({{"f0_ghz", r.center_frequency / 1e9}, {"kappa_mhz", r.kappa / 1e6}, {"reliable", r.reliable}});
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoResonanceFound) throw;
  }
  ctx.payload["flux_phi0"] = flux;
  ctx.payload["convention"] = "engineering, e^{+j w t}; far end grounded";
  ctx.payload["resonances"] = rows;
  ctx.table("s11", trace_to_table(trace));
  ctx.table("resonances", res);
}

void cmd_fit_fluxmap(Context& ctx) {
  const auto data = table_to_flux_map(load_table(ctx.input(0, "flux map CSV"), schema::flux_map(), 5));
  std::optional<FluxFitParams> init;
  if (ctx.opts.has("f0-ghz")) {
    init = FluxFitParams{ctx.opts.number("f0-ghz") * 1e9, ctx.opts.number("gamma-l", 0.5),
                         ctx.opts.number("lb-per-a"), ctx.opts.number("offset-ma", 0.0) * 1e-3};
  }
  const FluxFit f = fit_flux_modulation(data, init);
  ctx.payload["fit"] = fit_json(f.fit);
  ctx.payload["identifiable"] = f.identifiable;
  ctx.payload["model"] = "f0 / sqrt(1 - gamma_L + gamma_L / |cos(pi lb (I + I_offset))|)";
  Table model{{"bias_current_a", "freq_hz", "model_freq_hz"}, {{}, {}, {}}};
  for (const auto& s : data) {
    model.data[0].push_back(s.bias_current);
    model.data[1].push_back(s.frequency);
    model.data[2].push_back(flux_model(f.params, s.bias_current));
  }
  ctx.table("fluxmap_fit", model);
}

void cmd_fit_dimer(Context& ctx) {
  const ComplexTrace trace = table_to_trace(load_table(ctx.input(0, "trace CSV"), schema::trace(), 8));
  const DimerFit f = fit_dimer_reflection(trace);
  const auto& p = f.params;
  const double mhz = kTwoPi * 1e6;
  ctx.payload["fit"] = fit_json(f.fit);
  ctx.payload["derived"] = {{"j_mhz", p.coupling / mhz},
                            {"f1_ghz", p.omega_1 / kTwoPi / 1e9},
                            {"f2_ghz", p.omega_2 / kTwoPi / 1e9},
                            {"sqrt_asymmetry_mhz", std::sqrt(p.asymmetry) / mhz},
                            {"kappa_total_mhz", (p.kappa_plus + p.kappa_minus) / mhz}};
  Table model{{"freq_hz", "re", "im"}, {{}, {}, {}}};
  for (double fr : trace.frequencies) {
    const Complex v = dimer_reflection(p, kTwoPi * fr);
    model.data[0].push_back(fr);
    model.data[1].push_back(v.real());
    model.data[2].push_back(v.imag());
  }
  ctx.table("dimer_model", model);
}

void cmd_fit_gain(Context& ctx) {
  const auto data = table_to_gain(load_table(ctx.input(0, "gain CSV"), schema::gain(), 4));
  const GainFit f = fit_gain_profile(data);
  json lobes = json::array();
  for (const auto& l : f.lobes) {
    lobes.push_back({{"gain_db", l.gain_db},
                     {"center_ghz", l.center / 1e9},
                     {"fwhm_mhz", l.bandwidth / 1e6},
                     {"gain_bandwidth_mhz", l.gain_bandwidth / 1e6}});
  }
  ctx.payload["fit"] = fit_json(f.fit);
  ctx.payload["lobes"] = lobes;
}

void cmd_noise_vis(Context& ctx) {
  const auto on = table_to_psd(load_table(ctx.input(0, "pump-on PSD CSV"), schema::psd()));
  const auto off = table_to_psd(load_table(ctx.input(1, "pump-off PSD CSV"), schema::psd()));
  const NoiseVisibility v = noise_visibility(on, off);
  ctx.payload["max_visibility_db"] = v.max_visibility;
  ctx.payload["max_visibility_freq_ghz"] = v.max_frequency / 1e9;
  ctx.table("visibility", Table{{"freq_hz", "visibility_db"}, {v.frequencies, v.visibility}});
}

TransmonParams transmon_from(Options& o) {
  TransmonParams p;
  p.josephson_energy = o.number("ej-ghz") * PhysicalConstants::planck * 1e9;
  p.charging_energy = o.number("ec-ghz") * PhysicalConstants::planck * 1e9;
  p.gate_charge = o.number("ng", 0.0);
  p.charge_cutoff = static_cast<int>(o.number("ncut", 30.0));
  return p;
}

void cmd_calibrate(Context& ctx) {
  const std::string& verb = ctx.config.verb;
  Options& o = ctx.opts;
  const double h_ghz = PhysicalConstants::planck * 1e9;
  const double mhz = kTwoPi * 1e6;

  if (verb == "transmon") {
    const TransmonParams p = transmon_from(o);
    const int levels = static_cast<int>(o.number("levels", 5.0));
    const auto e = transmon_levels_charge_basis(p, levels);
    Table t{{"level_index", "energy_ghz", "asymptotic_energy_ghz"}, {{}, {}, {}}};
    for (int k = 0; k < levels; ++k) {
      t.data[0].push_back(k);
      t.data[1].push_back(e[static_cast<std::size_t>(k)] / h_ghz);
      t.data[2].push_back(transmon_levels_asymptotic(p, k) / h_ghz);
    }
    ctx.payload["f_ge_ghz"] = (e[1] - e[0]) / h_ghz;
    ctx.payload["f_ge_asymptotic_ghz"] = (transmon_levels_asymptotic(p, 1) - transmon_levels_asymptotic(p, 0)) / h_ghz;
    if (levels >= 3) ctx.payload["anharmonicity_mhz"] = (e[2] - 2.0 * e[1] + e[0]) / h_ghz * 1e3;
    ctx.table("transmon_levels", t);
  } else if (verb == "chi") {
    const TransmonParams q = transmon_from(o);
    ResonatorParams r;
    r.frequency = o.number("fr-ghz") * 1e9;
    r.coupling = o.number("g-mhz") * mhz;
    const DispersiveParams dp = dispersive_shift(q, r);
    ctx.payload["chi_khz"] = dp.chi / kTwoPi / 1e3;
    ctx.payload["qubit_anharmonicity_mhz"] = dp.qubit_anharmonicity / mhz;
    ctx.payload["dressed_qubit_ghz"] = dp.qubit_frequency / 1e9;
    ctx.payload["dressed_resonator_ghz"] = dp.resonator_frequency / 1e9;
    ctx.payload["resonator_anharmonicity_khz"] = dp.resonator_anharmonicity / kTwoPi / 1e3;
    ctx.payload["fock_cutoff"] = dp.fock_cutoff;
    ctx.payload["perturbative_chi_khz"] =
        perturbative_chi(r.coupling, dp.qubit_anharmonicity, kTwoPi * dp.qubit_frequency, kTwoPi * r.frequency) /
        kTwoPi / 1e3;
    if (o.has("kappa-mhz")) {
      const double angle = pointer_angle(dp.chi, o.number("kappa-mhz") * mhz);
      ctx.payload["pointer_angle_deg"] = angle * 180.0 / std::numbers::pi;
    }
    ctx.payload["warnings"] = dp.warnings;
  } else if (verb == "nmeas") {
    const double n = measurement_photon_number(o.number("nbar"), o.number("kappa-mhz") * mhz,
                                               o.number("gamma-mhz", 0.0) * mhz, o.number("tm-ns") * 1e-9);
    ctx.payload["n_meas_photons"] = n;
  } else if (verb == "flux") {
    ctx.payload["photon_flux_per_us"] = power_to_photon_flux(o.number("power-dbm"), o.number("freq-ghz") * 1e9);
  } else if (verb == "stark") {
    const auto pts = table_to_stark(load_table(ctx.input(0, "Stark CSV"), schema::stark(), 3));
    const StarkCalibration c = stark_photon_calibration(pts, o.number("f-r0-hz"), o.number("chi-khz") * kTwoPi * 1e3);
    ctx.payload["photons_per_amp2"] = c.slope;
    ctx.payload["r_squared"] = c.r_squared;
    ctx.payload["warnings"] = c.warnings;
    Table t{{"amp2", "n_photons", "residual_photons"}, {{}, c.photon_numbers, c.residuals}};
    for (const auto& p : pts) t.data[0].push_back(p.drive_amplitude_squared);
    ctx.table("stark", t);
  } else if (verb == "ramsey") {
    const std::string mode_name = o.text("mode", "single");
    if (mode_name != "single" && mode_name != "double") {
      throw Error(ErrorCode::InvalidArgument, "--mode must be single or double");
    }
    const RamseyMode mode = mode_name == "single" ? RamseyMode::Single : RamseyMode::Double;
    const auto data = table_to_ramsey(load_table(ctx.input(0, "Ramsey CSV"), schema::ramsey(), 10));
    const FitResult f = ramsey_fit(data, mode);
    ctx.payload["mode"] = mode_name;
    ctx.payload["fit"] = fit_json(f);
  } else if (verb == "jumps") {
    const Table t = load_table(ctx.input(0, "jump record CSV"), schema::jumps());
    JumpFilterConfig cfg{o.numbers("means"), o.number("sigma")};
    const JumpAssignment a = assign_qubit_states(t.data[1], cfg);
    std::vector<double> labels(a.labels.begin(), a.labels.end());
    ctx.payload["jumps"] = a.jumps;
    ctx.payload["first_in_band_index"] = a.first_in_band;
    json dwell = json::array();
    const std::size_t bin = static_cast<std::size_t>(o.number("dwell-bin", 1.0));
    for (std::size_t s = 0; s < a.dwell_samples.size(); ++s) {
      dwell.push_back({{"state", s}, {"dwells", a.dwell_samples[s].size()},
                       {"histogram", dwell_histogram(a.dwell_samples[s], std::max<std::size_t>(bin, 1))}});
    }
    ctx.payload["dwell_histograms"] = dwell;
    if (o.has("sigma-photons")) {
      const double eta = measurement_efficiency(o.number("sigma-photons"));
      ctx.payload["efficiency"] = eta;
      ctx.payload["amplifier_efficiency_bound"] = amplifier_efficiency_bound(eta, o.number("line-efficiency", 0.5));
    }
    ctx.table("states", Table{{"t_s", "state_index"}, {t.data[0], labels}});
  } else if (verb == "temp") {
    const json in = json::parse(read_text_file(ctx.input(0, "populations JSON")), nullptr, false);
    if (in.is_discarded() || !in.contains("populations") || !in.contains("energies_ghz")) {
      throw Error(ErrorCode::SchemaMismatch, "populations JSON needs 'populations' and 'energies_ghz' arrays");
    }
    std::vector<double> e;
    for (double v : in.at("energies_ghz").get<std::vector<double>>()) e.push_back(v * h_ghz);
    const double t = qubit_temperature(in.at("populations").get<std::vector<double>>(), e);
    ctx.payload["temperature_mk"] = t * 1e3;
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown calibrate verb '{}'", verb));
  }
}

std::vector<double> grid_from(Options& o, double start_ghz, double stop_ghz, double step_mhz) {
  return linear_grid(o.number("start-ghz", start_ghz) * 1e9, o.number("stop-ghz", stop_ghz) * 1e9,
                     o.number("step-mhz", step_mhz) * 1e6);
}

void cmd_synth(Context& ctx) {
  const std::string& verb = ctx.config.verb;
  Options& o = ctx.opts;
  const std::uint64_t seed = ctx.config.seed;
  const double mhz = kTwoPi * 1e6;

  if (verb == "telegraph") {
    const auto t = synth_telegraph(static_cast<std::size_t>(o.number("samples", 10000.0)), o.number("mean-g", 0.0),
                                   o.number("mean-e", 16.0), o.number("sigma", 2.0), o.number("p-up", 0.005),
                                   o.number("p-down", 0.05), o.number("dt-us", 0.5) * 1e-6, seed);
    Table out{{"t_s", "q"}, {{}, t.q}};
    Table truth{{"t_s", "state_index"}, {{}, std::vector<double>(t.truth.begin(), t.truth.end())}};
    for (std::size_t i = 0; i < t.q.size(); ++i) out.data[0].push_back(static_cast<double>(i) * t.sample_period);
    truth.data[0] = out.data[0];
    ctx.table("jumps", out);
    ctx.table("truth", truth);
  } else if (verb == "jumps") {
    CalibratedJumpConfig c;
    c.sigma = o.number("sigma", c.sigma);
    c.target_fidelity = o.number("fidelity", c.target_fidelity);
    c.t1 = o.number("t1-us", c.t1 * 1e6) * 1e-6;
    c.sample_period = o.number("dt-us", c.sample_period * 1e6) * 1e-6;
    c.population_ratio = o.number("ratio", c.population_ratio);
    c.samples = static_cast<std::size_t>(o.number("samples", static_cast<double>(c.samples)));
    const auto t = synth_calibrated_jumps(c, seed);
    Table out{{"t_s", "q"}, {{}, t.q}};
    Table truth{{"t_s", "state_index"}, {{}, std::vector<double>(t.truth.begin(), t.truth.end())}};
    for (std::size_t i = 0; i < t.q.size(); ++i) out.data[0].push_back(static_cast<double>(i) * t.sample_period);
    truth.data[0] = out.data[0];
    ctx.payload["separation"] = calibrated_separation(c.sigma, c.target_fidelity);
    ctx.table("jumps", out);
    ctx.table("truth", truth);
  } else if (verb == "resonance") {
    const auto grid = grid_from(o, 5.0, 7.0, 1.0);
    const auto t = synth_resonance(o.number("f0-ghz", 6.0) * 1e9, o.number("kappa-mhz", 150.0) * 1e6, grid,
                                   o.number("noise", 0.0), seed);
    ctx.table("trace", trace_to_table(t));
  } else if (verb == "dimer") {
    DimerFitParams p;
    const double center = o.number("center-ghz", 6.0) * 1e9 * kTwoPi;
    const double split = o.number("split-mhz", 670.0) * mhz;
    p.omega_plus = center + 0.5 * split;
    p.omega_minus = center - 0.5 * split;
    p.kappa_plus = o.number("kappa-plus-mhz", 148.0) * mhz;
    p.kappa_minus = o.number("kappa-minus-mhz", 139.0) * mhz;
    p.gamma_plus = o.number("gamma-plus-mhz", 0.0) * mhz;
    p.gamma_minus = o.number("gamma-minus-mhz", 0.0) * mhz;
    p.phase = o.number("phase", 0.0);
    const auto grid = grid_from(o, 4.5, 7.5, 1.0);
    ctx.table("trace", trace_to_table(synth_dimer(p, grid, o.number("noise", 0.0), seed)));
  } else if (verb == "fluxmap") {
    const FluxFitParams p{o.number("f0-ghz", 7.0) * 1e9, o.number("gamma-l", 0.9), o.number("lb-per-a", 0.5),
                          o.number("offset-ma", 1.0) * 1e-3};
    const auto data = synth_flux_map(p, o.number("i-min-a", -0.9), o.number("i-max-a", 0.9),
                                     static_cast<std::size_t>(o.number("points", 200.0)), o.number("noise-hz", 0.0),
                                     seed);
    Table t{{"bias_current_a", "freq_hz"}, {{}, {}}};
    for (const auto& s : data) {
      t.data[0].push_back(s.bias_current);
      t.data[1].push_back(s.frequency);
    }
    ctx.table("fluxmap", t);
  } else if (verb == "ramsey") {
    std::vector<RamseyComponent> comps{{o.number("amplitude", 0.5), o.number("f-mhz", 1.0) * 1e6, 0.0}};
    if (o.has("f2-mhz")) comps.push_back({o.number("amplitude2", 0.5), o.number("f2-mhz") * 1e6, 0.0});
    const auto data = synth_ramsey(comps, o.number("t2-us", 6.5) * 1e-6, o.number("offset", 0.5),
                                   o.number("tmax-us", 20.0) * 1e-6, static_cast<std::size_t>(o.number("points", 400.0)),
                                   o.number("noise", 0.0), seed);
    Table t{{"delay_s", "signal"}, {{}, {}}};
    for (const auto& s : data) {
      t.data[0].push_back(s.delay);
      t.data[1].push_back(s.signal);
    }
    ctx.table("ramsey", t);
  } else if (verb == "gain") {
    const double product = o.number("product-mhz", 170.0) * 1e6;
    const GainLobe lobe = constant_product_lobe(o.number("gain-db", 20.0), product, o.number("center-ghz", 6.0) * 1e9);
    const double half = 6.0 * lobe.bandwidth;
    const auto grid = linear_grid(lobe.center - half, lobe.center + half, lobe.bandwidth / 50.0);
    const auto data = synth_gain({lobe}, grid, o.number("noise-db", 0.0), seed);
    Table t{{"freq_hz", "gain_db"}, {{}, {}}};
    for (const auto& s : data) {
      t.data[0].push_back(s.frequency);
      t.data[1].push_back(s.gain_db);
    }
    ctx.table("gain", t);
  } else if (verb == "psd") {
    const auto grid = grid_from(o, 5.9, 6.1, 0.5);
    const auto [on, off] = synth_noise_spectra(grid, o.number("floor-dbm", -170.0), o.number("bump-db", 14.2),
                                               o.number("center-ghz", 6.0) * 1e9, o.number("width-mhz", 20.0) * 1e6,
                                               o.number("ripple-db", 0.0), seed);
    auto to_table = [](const std::vector<SpectrumSample>& s) {
      Table t{{"freq_hz", "psd_dbm_per_hz"}, {{}, {}}};
      for (const auto& p : s) {
        t.data[0].push_back(p.frequency);
        t.data[1].push_back(p.density_dbm);
      }
      return t;
    };
    ctx.table("psd_on", to_table(on));
    ctx.table("psd_off", to_table(off));
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown synth generator '{}'", verb));
  }
}

}  // namespace

ResultDocument run_pipeline(const PipelineConfig& config) {
  if (config.format != "csv" && config.format != "json") {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown format '{}'", config.format));
  }
  Context ctx{config, Options(config.options), json::object(), {}};

  json echo = {{"command", config.command}};
  if (!config.verb.empty()) echo["verb"] = config.verb;
  if (config.design) echo["design"] = config.design->filename().string();
  json inputs_echo = json::array();
  for (const auto& p : config.inputs) inputs_echo.push_back(p.filename().string());
  echo["inputs"] = inputs_echo;
  echo["options"] = config.options;
  echo["seed"] = config.seed;
  echo["format"] = config.format;

  json hashes = json::array();
  if (config.design) {
    hashes.push_back({{"role", "design"}, {"file", config.design->filename().string()},
                      {"sha256", sha256_hex(read_text_file(*config.design))}});
  }
  for (const auto& p : config.inputs) {
    hashes.push_back({{"role", "input"}, {"file", p.filename().string()}, {"sha256", sha256_hex(read_text_file(p))}});
  }

  const std::string& c = config.command;
  if (c == "dispersion") cmd_dispersion(ctx);
  else if (c == "kerr") cmd_kerr(ctx);
  else if (c == "s11") cmd_s11(ctx);
  else if (c == "fit-fluxmap") cmd_fit_fluxmap(ctx);
  else if (c == "fit-dimer") cmd_fit_dimer(ctx);
  else if (c == "fit-gain") cmd_fit_gain(ctx);
  else if (c == "noise-vis") cmd_noise_vis(ctx);
  else if (c == "calibrate") cmd_calibrate(ctx);
  else if (c == "synth") cmd_synth(ctx);
  else throw Error(ErrorCode::InvalidArgument, fmt::format("unknown command '{}'", c));
  ctx.opts.finish();

  ResultDocument out;
  out.document = {{"command", echo},
                  {"provenance", {{"tool", "jjal"}, {"version", std::string(version())}, {"seed", config.seed},
                                  {"inputs", hashes}}},
                  {"payload", ctx.payload}};
  out.files = std::move(ctx.files);
  return out;
}

void write_outputs(const ResultDocument& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "result.json", result.dump());
  for (const auto& f : result.files) write_text_file(dir / f.name, f.content);
}

}  // namespace jjal
