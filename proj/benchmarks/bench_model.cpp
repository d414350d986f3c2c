/*
 * Copyright 2026 the hetperf authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "hetperf/config.hpp"
#include "hetperf/static_analysis.hpp"

using namespace hetperf;

static void BM_GFactorClosed(benchmark::State& state) {
    const Scenario sc = base_scenario(reference_preset());
    const GFactorModel g(sc);
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g(r));
        r = r < 0.5 ? r + 0.001 : 0.01;
    }
}
BENCHMARK(BM_GFactorClosed);

static void BM_GFactorLattice(benchmark::State& state) {
    const Scenario sc = base_scenario(reference_preset());
    const int rings = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(g_bruteforce(0.37, 0.3, rings, sc));
}
BENCHMARK(BM_GFactorLattice)->Arg(10)->Arg(30);

static void BM_CcdfMacroPoint(benchmark::State& state) {
    const Scenario sc = offset_scenario(reference_preset(), 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(ccdf_macro_with_sc(25.0, sc));
}
BENCHMARK(BM_CcdfMacroPoint);

static void BM_CcdfSmallPoint(benchmark::State& state) {
    const Scenario sc = offset_scenario(reference_preset(), 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(ccdf_small(25.0, sc, Regime::WithPeer));
}
BENCHMARK(BM_CcdfSmallPoint);

static void BM_MonteCarloSampling(benchmark::State& state) {
    const Scenario sc = offset_scenario(reference_preset(), 0.0);
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        const auto set = sample_peak_rates(sc, n, 42);
        benchmark::DoNotOptimize(set.samples.size());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MonteCarloSampling)->Arg(10000)->Arg(100000);
