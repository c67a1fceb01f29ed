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

// Acceptance run: one PASS/FAIL line per criterion, informational lines
// indented below it. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "jjal/constants.hpp"
#include "jjal/eigenmodes.hpp"
#include "jjal/fits.hpp"
#include "jjal/jump_filter.hpp"
#include "jjal/kerr.hpp"
#include "jjal/readout.hpp"
#include "jjal/scattering.hpp"
#include "jjal/synth.hpp"
#include "jjal/table_io.hpp"
#include "jjal/transmon.hpp"
#include "oracles.hpp"

namespace {

using namespace jjal;
namespace fs = std::filesystem;

constexpr double kMHz = kTwoPi * 1e6;

struct Check {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    pass = pass && ok;
    notes.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", std::move(note)));
  }
  void info(std::string note) { notes.push_back("info " + std::move(note)); }
};

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

// ---- reference tables ------------------------------------------------------

struct TableRow {
  double f_ghz, k_self_khz, k_cross_khz;
};

const std::vector<std::vector<TableRow>>& reference_rows() {
  static const std::vector<std::vector<TableRow>> rows{
      {{2.061, 1.1, 2.8}, {2.478, 1.8, 6.1}, {6.427, 12.7, 26.9}, {7.106, 15.3, 29.7},
       {10.398, 34.9, 69.8}, {10.881, 37.3, 59.6}, {13.364, 58.3, 115.3}, {13.646, 59.8, 87.2}},
      {{1.113, 0.5, 1.2}, {1.345, 0.8, 2.7}, {3.488, 5.6, 11.9}, {3.927, 7.1, 13.7},
       {5.828, 16.4, 32.8}, {6.210, 18.2, 29.4}, {7.819, 30.0, 58.7}, {8.090, 31.4, 46.5},
       {9.381, 43.3, 84.7}, {9.560, 44.3, 62.4}, {10.561, 55.0, 107.8}, {10.677, 55.7, 76.1}},
      {{0.863, 0.3, 0.9}, {1.039, 0.6, 1.9}, {2.696, 3.8, 8.2}, {3.050, 5.0, 9.5},
       {4.538, 11.5, 22.8}, {4.873, 12.9, 20.9}, {6.177, 21.5, 41.9}, {6.434, 22.8, 33.9},
       {7.528, 32.1, 62.4}, {7.710, 33.1, 46.8}, {8.598, 42.0, 81.8}, {8.724, 42.7, 58.5}},
  };
  return rows;
}

// ---- criteria --------------------------------------------------------------

Check table_regression() {
  Check c;
  for (int dev = 1; dev <= 3; ++dev) {
    const auto start = std::chrono::steady_clock::now();
    const ArrayDesign d = reference_device(dev);
    const auto& rows = reference_rows()[dev - 1];
    const int listed = static_cast<int>(rows.size());
    const ModeSpectrum s = solve_modes(d, {});
    const KerrTensor k = kerr_coefficients(d, s, listed + 1);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    double worst_f = 0.0, worst_self = 0.0, worst_cross = 0.0;
    for (int m = 0; m < listed; ++m) {
      worst_f = std::max(worst_f, rel(s.frequency_hz(m) / 1e9, rows[m].f_ghz));
      worst_self = std::max(worst_self, rel(k.self_kerr(m) / 1e3, rows[m].k_self_khz));
      worst_cross = std::max(worst_cross, rel(k.cross_kerr(m, m + 1) / 1e3, rows[m].k_cross_khz));
    }
    c.require(worst_f < 0.02, fmt::format("device {} (N={}): worst frequency error {:.3f}% (limit 2%)", dev,
                                          d.n_squids, 100 * worst_f));
    c.require(worst_self < 0.15, fmt::format("device {}: worst K_mm error {:.1f}% (limit 15%)", dev, 100 * worst_self));
    c.require(worst_cross < 0.15,
              fmt::format("device {}: worst K_m,m+1 error {:.1f}% (limit 15%)", dev, 100 * worst_cross));
    c.require(seconds < 60.0, fmt::format("device {}: {:.2f} s (limit 60 s)", dev, seconds));
  }
  return c;
}

Check plasma_frequencies() {
  Check c;
  const double lj[] = {55e-12, 110e-12, 143e-12};
  const double cj[] = {1080e-15, 1050e-15, 1050e-15};
  const double listed[] = {20.65, 14.81, 13.0};
  for (int i = 0; i < 3; ++i) {
    const double f = plasma_frequency(lj[i], cj[i]) / 1e9;
    c.require(rel(f, listed[i]) < 1e-3,
              fmt::format("sample {}: {:.4f} GHz vs {:.2f} GHz ({:.3f}%)", i + 1, f, listed[i], 100 * rel(f, listed[i])));
  }
  for (int dev = 1; dev <= 3; ++dev) {
    c.info(fmt::format("critical-current preset {}: {:.4f} GHz", dev, plasma_frequency(reference_device(dev)) / 1e9));
  }
  return c;
}

Check analytic_dispersion() {
  Check c;
  const double lj = 55e-12, cj = 1080e-15, c0 = cj / 2500.0;
  for (int n : {10, 100, 500}) {
    const ModeSpectrum s = solve_modes(uniform_chain_matrices(n, lj, cj, c0));
    const auto ref = oracle::uniform_chain_frequencies(n, lj, cj, c0);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, rel(s.angular_frequencies(k), ref[k]));
    c.require(worst < 1e-9, fmt::format("N={}: max relative error {:.2e} (limit 1e-9)", n, worst));
  }
  return c;
}

ArrayDesign small_design(int n) {
  ArrayDesign d = reference_device(1);
  d.n_squids = n;
  return d;
}

Check brute_force() {
  Check c;
  double worst_w = 0.0, worst_k = 0.0;
  for (int n : {2, 4, 6, 8}) {
    for (double phi : {0.0, 0.2}) {
      const ArrayDesign d = small_design(n);
      const ModeSpectrum s = solve_modes(d, {phi});
      const KerrTensor k = kerr_coefficients(d, s, n);
      const auto ref =
          oracle::generalized_modes(oracle::ladder(d, squid_inductance(d.josephson_inductance(), {phi})), true);
      for (int m = 0; m < n; ++m) {
        worst_w = std::max(worst_w, rel(s.angular_frequencies(m), ref.omega(m)));
        worst_k = std::max(worst_k,
                           rel(k.self_kerr(m), oracle::quartic_self_kerr(ref.flux.col(m), ref.omega(m),
                                                                         d.josephson_energy())));
      }
    }
  }
  c.require(worst_w < 1e-10, fmt::format("(a) eigenfrequencies vs generalized problem: {:.2e} (limit 1e-10)", worst_w));
  c.require(worst_k < 1e-6, fmt::format("(b) K_mm vs quartic expansion: {:.2e} (limit 1e-6)", worst_k));
  return c;
}

// Every eigenmode below 10 GHz against the nearest scattering resonance.
struct ModeMatch {
  int unmatched = 0;
  int modes = 0;
  double worst_ratio = 0.0;  // distance / max(kappa, 0.5% f)
};

ModeMatch match_modes(const ArrayDesign& d) {
  const ModeSpectrum s = solve_modes(d, {});
  const auto res = find_resonances(d, {}, 0.3e9, 10.3e9);
  ModeMatch out;
  for (Eigen::Index m = 0; m < s.size() && s.frequency_hz(m) < 10e9; ++m) {
    const double f = s.frequency_hz(m);
    double best = 1e300;
    for (const auto& r : res) best = std::min(best, std::abs(r.center_frequency - f) / std::max(r.kappa, 0.005 * f));
    ++out.modes;
    out.worst_ratio = std::max(out.worst_ratio, best);
    if (best > 1.0) ++out.unmatched;
  }
  return out;
}

Check scattering_consistency() {
  Check c;
  for (int dev = 1; dev <= 3; ++dev) {
    const ArrayDesign with_stray = reference_device(dev);
    const ComplexTrace t = s11_sweep(with_stray, {}, linear_grid(0.3e9, 10.3e9, 1e6));
    double worst = 0.0;
    for (const Complex& v : t.values) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
    c.require(worst < 1e-9, fmt::format("device {}: max ||S11| - 1| = {:.1e} (limit 1e-9)", dev, worst));

    // The eigenmode model has no stray inductance; compare like with like.
    ArrayDesign bare = with_stray;
    bare.stray_inductance = 0.0;
    const ModeMatch m = match_modes(bare);
    c.require(m.unmatched == 0, fmt::format("device {}: {}/{} sub-10 GHz modes matched without stray inductance "
                                            "(worst distance {:.2f} of the window)",
                                            dev, m.modes - m.unmatched, m.modes, m.worst_ratio));
    const ModeMatch s = match_modes(with_stray);
    c.info(fmt::format("device {} with L_s = {:.1f} pH: {}/{} matched (worst {:.2f} of the window)", dev,
                       with_stray.stray_inductance * 1e12, s.modes - s.unmatched, s.modes, s.worst_ratio));
  }
  return c;
}

Check fit_roundtrips() {
  Check c;
  {
    const FluxFitParams truth{7e9, 0.9, 0.5, 1e-3};
    const auto data = synth_flux_map(truth, -1.5, 1.5, 200, 0.0, 1);
    const FluxFit f = fit_flux_modulation(data);
    const double worst = std::max({rel(f.params.f0, truth.f0), rel(f.params.gamma_l, truth.gamma_l),
                                   rel(f.params.lb, truth.lb), rel(f.params.current_offset, truth.current_offset)});
    c.require(worst < 1e-3, fmt::format("flux map (7 GHz, 0.9, 0.5/A, 1 mA): worst parameter error {:.2e} "
                                        "(limit 0.1%)", worst));
  }
  {
    DimerFitParams truth;
    truth.omega_plus = kTwoPi * 6.335e9;
    truth.omega_minus = kTwoPi * 5.665e9;
    truth.kappa_plus = 148 * kMHz;
    truth.kappa_minus = 139 * kMHz;
    const ComplexTrace t = synth_dimer(truth, linear_grid(5.3e9, 6.7e9, 1e6), 1e-3, 2);
    const DimerFit f = fit_dimer_reflection(t);
    const double worst = std::max({rel(f.params.omega_plus, truth.omega_plus), rel(f.params.omega_minus,
                                   truth.omega_minus), rel(f.params.kappa_plus, truth.kappa_plus),
                                   rel(f.params.kappa_minus, truth.kappa_minus)});
    c.require(worst < 5e-3, fmt::format("dimer (2J = 670 MHz, 148/139 MHz): worst parameter error {:.2e} "
                                        "(limit 0.5%)", worst));
    c.info(fmt::format("dimer fit gamma+- = {:.3f} / {:.3f} MHz", f.params.gamma_plus / kMHz,
                       f.params.gamma_minus / kMHz));
  }
  {
    const DimerAsymmetry a = dimer_asymmetry(kTwoPi * 6.335e9, kTwoPi * 5.665e9, 148 * kMHz, 139 * kMHz);
    const double split = std::abs(a.omega_1 - a.omega_2) / kMHz;
    c.require(std::abs(split - 21.0) <= 1.0, fmt::format("|w1 - w2|/2pi = {:.2f} MHz (21 +- 1), J/2pi = {:.2f} MHz",
                                                         split, a.coupling / kMHz));
  }
  {
    std::vector<double> products;
    for (double g_db = 15.0; g_db <= 25.0; g_db += 2.5) {
      const GainLobe lobe = constant_product_lobe(g_db, 170e6, 6e9);
      const auto data = synth_gain({lobe}, linear_grid(5.85e9, 6.15e9, 0.2e6), 0.05, 100 + int(g_db));
      const GainFit f = fit_gain_profile(data);
      products.push_back(f.lobes.at(0).gain_bandwidth);
    }
    double worst = 0.0;
    for (double p : products) worst = std::max(worst, rel(p, 170e6));
    c.require(worst < 0.02, fmt::format("gain-bandwidth family 15-25 dB at 170 MHz: worst deviation {:.2f}% "
                                        "(limit 2%)", 100 * worst));
    c.info(fmt::format("sqrt(G0) B for 23.2 dB / 9.2 MHz: {:.1f} MHz", gain_bandwidth_product(23.2, 9.2e6) / 1e6));
  }
  {
    const auto data = synth_ramsey({{0.5, 1.0e6, 0.0}}, 6.5e-6, 0.5, 20e-6, 400, 0.002, 3);
    const FitResult f = ramsey_fit(data, RamseyMode::Single);
    const double worst = std::max(rel(f.value("t2_us"), 6.5), rel(f.value("f_mhz"), 1.0));
    c.require(worst < 0.01, fmt::format("Ramsey single (6.5 us, 1 MHz): worst error {:.2e} (limit 1%)", worst));
  }
  {
    const auto data = synth_ramsey({{0.25, 1.03e6, 0.0}, {0.25, 1.19e6, 0.0}}, 6.5e-6, 0.5, 25e-6, 500, 0.002, 4);
    const FitResult f = ramsey_fit(data, RamseyMode::Double);
    const double lo = std::min(f.value("f1_mhz"), f.value("f2_mhz"));
    const double hi = std::max(f.value("f1_mhz"), f.value("f2_mhz"));
    const double worst = std::max(rel(lo, 1.03), rel(hi, 1.19));
    c.require(worst < 0.02, fmt::format("Ramsey double (1.03, 1.19 MHz): worst error {:.2e} (limit 2%)", worst));
  }
  return c;
}

Check desk_numbers() {
  Check c;
  const double n = measurement_photon_number(150.0, 2.7 * kMHz, 0.0, 500e-9);
  c.require(std::abs(n - 318.0) <= 1.0, fmt::format("n_meas = {:.2f} (318 +- 1)", n));
  const double eta = measurement_efficiency(2.0);
  c.require(std::abs(eta - 0.125) < 1e-12, fmt::format("eta = {:.4f} (0.125)", eta));
  const double angle = pointer_angle(480e3 * kTwoPi, 2.7 * kMHz) * 180.0 / std::numbers::pi;
  c.require(std::abs(angle - 40.3) <= 0.5, fmt::format("pointer angle = {:.2f} deg (40.3 +- 0.5)", angle));
  const double flux = power_to_photon_flux(-118.0, 5.8224e9);
  c.require(rel(flux, 420.0) < 0.05, fmt::format("photon flux = {:.1f} /us (420 within 5%)", flux));
  const double gap = PhysicalConstants::planck * 4.505e9;
  const double t = qubit_temperature({12.0, 1.0}, {0.0, gap});
  c.require(std::abs(t * 1e3 - 87.0) < 0.5, fmt::format("T_q from N0/N1 = 12 = {:.2f} mK (87)", t * 1e3));

  TransmonParams q;
  q.josephson_energy = 12.5 * PhysicalConstants::planck * 1e9;
  q.charging_energy = 0.225 * PhysicalConstants::planck * 1e9;
  const auto e = transmon_levels_charge_basis(q, 3);
  const double f_ge = (e[1] - e[0]) / PhysicalConstants::planck / 1e9;
  c.require(rel(f_ge, 4.518) < 0.02, fmt::format("charge-basis f_ge = {:.4f} GHz (4.518 within 2%)", f_ge));

  ResonatorParams r;
  r.frequency = 5.8224e9;
  r.coupling = 39 * kMHz;
  const DispersiveParams d = dispersive_shift(q, r);
  const double chi_khz = d.chi / kTwoPi / 1e3;
  c.require(rel(chi_khz, 480.0) < 0.40, fmt::format("chi_qr = {:.1f} kHz (480 within 40%)", chi_khz));
  const double pert = perturbative_chi(39 * kMHz, -256 * kMHz, kTwoPi * 4.505e9, kTwoPi * 5.8224e9) / kTwoPi / 1e3;
  c.info(fmt::format("bare perturbative g^2 a / (D (D - a)) = {:.1f} kHz, ratio {:.2f}", pert, chi_khz / pert));
  return c;
}

Check jump_filter() {
  Check c;
  {
    const TelegraphTrace t = synth_telegraph(200000, 0.0, 8.0, 1.0, 5e-4, 5e-4, 0.5e-6, 8);
    const JumpAssignment a = assign_qubit_states(t.q, {{0.0, 8.0}, 1.0});
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < t.truth.size(); ++i) wrong += a.labels[i] != t.truth[i];
    const double err = static_cast<double>(wrong) / static_cast<double>(t.truth.size());
    c.require(err < 1e-3, fmt::format("8 sigma telegraph: label error {:.4f}% (limit 0.1%), {} jumps", 100 * err,
                                      a.jumps));
  }
  {
    const CalibratedJumpConfig cfg;
    const double sep = calibrated_separation(cfg.sigma, cfg.target_fidelity);
    const TelegraphTrace t = synth_calibrated_jumps(cfg, 9);
    const JumpAssignment a = assign_qubit_states(t.q, {{0.0, sep}, cfg.sigma});
    const double f = discrimination_fidelity(a.labels, t.truth);
    c.require(f >= 0.85 && f <= 0.95,
              fmt::format("calibrated generator (separation {:.2f} sigma): fidelity {:.1f}% (85-95%)", sep / cfg.sigma,
                          100 * f));
  }
  return c;
}

#ifdef JJAL_CLI_PATH
std::string slurp(const fs::path& p) { return read_text_file(p); }

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::size_t count_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++count_b;
  if (names.size() != count_b) {
    why = "file sets differ";
    return false;
  }
  for (const auto& n : names) {
    if (!fs::exists(b / n) || slurp(a / n) != slurp(b / n)) {
      why = n + " differs";
      return false;
    }
  }
  return true;
}

int run(const std::string& args) {
  const std::string cmd = fmt::format("\"{}\" {} > /dev/null", JJAL_CLI_PATH, args);
  return std::system(cmd.c_str());
}
#endif

Check determinism() {
  Check c;
#ifdef JJAL_CLI_PATH
  const fs::path root = fs::current_path() / "acceptance_cli";
  fs::remove_all(root);
  struct Pipeline {
    std::string name;
    std::vector<std::string> steps;  // {dir} is replaced by the run directory
  };
  const std::vector<Pipeline> pipelines{
      {"synth dimer + fit-dimer",
       {"--seed 7 --out {dir}/s synth dimer --noise 0.01", "--out {dir}/f fit-dimer {dir}/s/trace.csv"}},
      {"synth fluxmap + fit-fluxmap",
       {"--seed 3 --out {dir}/s synth fluxmap", "--out {dir}/f fit-fluxmap {dir}/s/fluxmap.csv"}},
      {"synth gain + fit-gain", {"--seed 5 --out {dir}/s synth gain", "--out {dir}/f fit-gain {dir}/s/gain.csv"}},
      {"synth jumps + calibrate jumps",
       {"--seed 9 --out {dir}/s synth jumps --samples 20000",
        "--out {dir}/f calibrate jumps {dir}/s/jumps.csv --means 0,6.579 --sigma 2"}},
      {"dispersion sweep",
       {"--design " JJAL_DESIGNS_DIR "/sampleII.cfg --out {dir}/f dispersion --flux 0 --flux-stop 0.3 --flux-steps 4"}},
  };
  for (const auto& p : pipelines) {
    bool ok = true;
    for (const char* run_name : {"a", "b"}) {
      const fs::path dir = root / fmt::format("{}_{}", &p - pipelines.data(), run_name);
      for (std::string step : p.steps) {
        for (std::size_t pos; (pos = step.find("{dir}")) != std::string::npos;) step.replace(pos, 5, dir.string());
        ok = ok && run(step) == 0;
      }
    }
    std::string why = "a step exited nonzero";
    if (ok) {
      const fs::path a = root / fmt::format("{}_a", &p - pipelines.data());
      const fs::path b = root / fmt::format("{}_b", &p - pipelines.data());
      for (const auto& e : fs::directory_iterator(a)) {
        ok = ok && same_tree(e.path(), b / e.path().filename(), why);
      }
    }
    c.require(ok, fmt::format("{}: {}", p.name, ok ? "byte-identical" : why));
  }
  fs::remove_all(root);
#else
  c.require(false, "jjal CLI not built; rerun with JJAL_BUILD_TOOLS=ON");
#endif
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"reference mode table regression", table_regression},
      {"plasma frequencies", plasma_frequencies},
      {"analytic dispersion oracle", analytic_dispersion},
      {"brute-force equivalence", brute_force},
      {"scattering consistency", scattering_consistency},
      {"fit roundtrips", fit_roundtrips},
      {"calibration desk numbers", desk_numbers},
      {"quantum-jump filter", jump_filter},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.require(false, fmt::format("threw: {}", e.what()));
    }
    failed += c.pass ? 0 : 1;
    fmt::print("CRITERION {} {}: {}\n", i + 1, c.pass ? "PASS" : "FAIL", criteria[i].first);
    for (const auto& n : c.notes) fmt::print("    {}\n", n);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
