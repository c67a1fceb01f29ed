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

#include <benchmark/benchmark.h>

#include "jjal/eigenmodes.hpp"
#include "jjal/kerr.hpp"
#include "jjal/scattering.hpp"

namespace {

using namespace jjal;

void BM_SolveModes(benchmark::State& state) {
  ArrayDesign d = reference_device(1);
  d.n_squids = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_modes(d, {}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveModes)->RangeMultiplier(2)->Range(100, 1600)->Unit(benchmark::kMillisecond)->Complexity();

void BM_KerrTensor(benchmark::State& state) {
  const ArrayDesign d = reference_device(2);
  const ModeSpectrum s = solve_modes(d, {});
  for (auto _ : state) benchmark::DoNotOptimize(kerr_coefficients(d, s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_KerrTensor)->Arg(8)->Arg(13)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_S11Sweep(benchmark::State& state) {
  const ArrayDesign d = reference_device(static_cast<int>(state.range(0)));
  const auto grid = linear_grid(1e9, 2e9, 1e6);
  for (auto _ : state) benchmark::DoNotOptimize(s11_sweep(d, {}, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_S11Sweep)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
