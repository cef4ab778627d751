// Copyright 2026 The gkpforge Authors
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

#include "benchmark/benchmark.h"
#include "gkpforge/gkp.h"
#include "gkpforge/ideal_protocol.h"

using namespace gkpforge;

namespace {

void BM_RunIdeal(benchmark::State &state) {
    ProtocolParams p;
    p.n_qubits = static_cast<int>(state.range(0));
    p.w = p.n_qubits <= 3 ? 3.2 : 5.01;
    p.grid = PositionGrid::for_width(p.w);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ideal(p).final_state.branches.data());
    }
}
BENCHMARK(BM_RunIdeal)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_WignerWindow(benchmark::State &state) {
    const LowRankDensity rho = run_ideal({}).final_state.oscillator();
    for (auto _ : state) {
        benchmark::DoNotOptimize(wigner(rho).values.data());
    }
}
BENCHMARK(BM_WignerWindow)->Unit(benchmark::kMillisecond);

void BM_FitGkp(benchmark::State &state) {
    const LowRankDensity rho = run_ideal({}).final_state.oscillator();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_gkp(rho, {}).fidelity);
    }
}
BENCHMARK(BM_FitGkp)->Unit(benchmark::kMillisecond);

void BM_ToFock(benchmark::State &state) {
    const WaveFunction psi = squeezed_vacuum(3.2, PositionGrid::standard());
    for (auto _ : state) {
        benchmark::DoNotOptimize(to_fock(psi, 80).coeffs.data());
    }
}
BENCHMARK(BM_ToFock)->Unit(benchmark::kMillisecond);

}  // namespace
