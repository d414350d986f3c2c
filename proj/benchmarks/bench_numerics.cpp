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

#include <cmath>

#include "hetperf/numerics.hpp"

using namespace hetperf::numerics;

static void BM_BesselI0(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bessel_i0(x));
}
BENCHMARK(BM_BesselI0)->Arg(1)->Arg(6)->Arg(25);

static void BM_HurwitzZeta(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(hurwitz_zeta(1.88, 1.0 / 3.0));
}
BENCHMARK(BM_HurwitzZeta);

static void BM_LogGamma(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(x));
        x = x < 50.0 ? x + 0.1 : 0.1;
    }
}
BENCHMARK(BM_LogGamma);

static void BM_AdaptiveQuadrature(benchmark::State& state) {
    const double k = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const auto r = integrate_1d(
            [k](double t) { return std::exp(k * std::cos(t)); }, 0.0, 6.2831853);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_AdaptiveQuadrature)->Arg(1)->Arg(6);
