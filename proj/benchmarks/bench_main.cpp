// Copyright 2026 The coordcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "coordcert/dag.hpp"
#include "coordcert/noise.hpp"
#include "coordcert/opt.hpp"
#include "coordcert/quantum.hpp"
#include "coordcert/witness.hpp"

namespace {

void BM_BuildGstar(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coord::build_gstar(n));
    }
}
BENCHMARK(BM_BuildGstar)->DenseRange(4, 10, 2);

void BM_PsdCheck(benchmark::State &state) {
    auto w = coord::build_witness(static_cast<int>(state.range(0)), coord::Variant::Trig);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coord::psd_check(w));
    }
}
BENCHMARK(BM_PsdCheck)->Arg(10)->Arg(50)->Arg(200);

void BM_OptimalStrategyStats(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coord::optimal_strategy_stats(n, 0.95));
    }
}
BENCHMARK(BM_OptimalStrategyStats)->DenseRange(4, 10, 3);

void BM_EnumerateCircuits(benchmark::State &state) {
    int bound = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto circuits = coord::enumerate_circuits(bound);
        state.counters["circuits"] = static_cast<double>(circuits.size());
    }
}
BENCHMARK(BM_EnumerateCircuits)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SolveThreshold(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coord::solve_threshold(n, coord::Variant::Trig));
    }
}
BENCHMARK(BM_SolveThreshold)->Arg(4)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
