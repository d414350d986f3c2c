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

#include "hetperf/simulator.hpp"

using namespace hetperf;

namespace {
TrafficModel ten_class_model() {
    FlowClassSet classes;
    classes.split = {0.8, 0.2};
    for (int k = 0; k < 10; ++k) {
        classes.macro.push_back({0.1, 12.0 + 8.0 * k, 9.0 + 7.0 * k});
        classes.small.push_back({0.1, 15.0 + 8.0 * k, 10.0 + 7.0 * k});
    }
    return TrafficModel{2.0, 2.0, classes};
}
}  // namespace

static void BM_SimulatorEvents(benchmark::State& state) {
    const TrafficModel traffic = ten_class_model();
    SimConfig config;
    config.seed = 9;
    config.measured_events = state.range(0);
    config.warmup_events = 0;
    config.replications = 1;
    for (auto _ : state) {
        const SimStats stats = run_simulation(traffic, config);
        benchmark::DoNotOptimize(stats.macro.busy_fraction.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatorEvents)->Arg(100000)->Arg(1000000);

static void BM_SolveLoads(benchmark::State& state) {
    const TrafficModel traffic = ten_class_model();
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_loads(traffic).rho_macro);
}
BENCHMARK(BM_SolveLoads);
