// SPDX-License-Identifier: Apache-2.0
//
// isac-mi: asymptotic mutual information and beamforming for MIMO ISAC
// Copyright (C) 2026 The isac-mi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "isac/fixedpoint.hpp"
#include "isac/mi.hpp"
#include "isac/montecarlo.hpp"
#include "isac/optimizer.hpp"

using namespace isac;

namespace {

SystemDims square(int n) { return SystemDims{n, n, n, 2, n, n}; }

void BM_SolveSensing(benchmark::State& state) {
    const SystemDims dims = square(static_cast<int>(state.range(0)));
    const ScenarioStats s = generate_scenario(dims, 1.0, 7);
    const Beamformer bf = default_beamformer(dims, dims.n_t);
    const SpectralPoint p = SpectralPoint::from_noise_power(NoiseConfig{}.sigma_s2());
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_sensing(s, bf, p).residual);
}
BENCHMARK(BM_SolveSensing)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveComm(benchmark::State& state) {
    const SystemDims dims = square(static_cast<int>(state.range(0)));
    const ScenarioStats s = generate_scenario(dims, 1.0, 7);
    const Beamformer bf = default_beamformer(dims, dims.n_t);
    const SpectralPoint p = SpectralPoint::from_noise_power(NoiseConfig{}.sigma_c2());
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_comm(s, bf, p).residual);
}
BENCHMARK(BM_SolveComm)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Gradient(benchmark::State& state) {
    const SystemDims dims = square(static_cast<int>(state.range(0)));
    const ScenarioStats s = generate_scenario(dims, 1.0, 7);
    const Beamformer bf = default_beamformer(dims, dims.n_t);
    const NoiseConfig noise;
    const MiEvaluation ev = evaluate_mi(s, bf, noise, 0.8);
    for (auto _ : state)
        benchmark::DoNotOptimize(gradient(s, bf, noise, 0.8, ev.sensing, ev.comm).norm());
}
BENCHMARK(BM_Gradient)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_MonteCarloTrials(benchmark::State& state) {
    const SystemDims dims = square(16);
    const ScenarioStats s = generate_scenario(dims, 1.0, 7);
    const Beamformer bf = default_beamformer(dims, dims.n_t);
    McOptions o;
    o.trials = static_cast<int>(state.range(0));
    o.workers = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate(s, bf, NoiseConfig{}, McQuantity::mi_s, o).mean);
    state.SetItemsProcessed(state.iterations() * o.trials);
}
BENCHMARK(BM_MonteCarloTrials)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
