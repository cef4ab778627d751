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
#include "gkpforge/dispersive.h"

using namespace gkpforge;

namespace {

SimConfig bench_config(int n_qubits, NoiseRates noise = {}) {
    SimConfig c;
    c.n_qubits = n_qubits;
    c.noise = noise;
    return c;
}

JointDensityMatrix prepared_state(const SimConfig &c) {
    JointDensityMatrix s = initial_joint_state(c);
    apply_qubit_unitary(qubit_op_unitary(QubitOp::kPrepareV, c), s);
    apply_qubit_unitary(qubit_op_unitary(QubitOp::kInverseQft, c), s);
    return s;
}

void BM_GeneratorApply(benchmark::State &state) {
    const NoiseRates noise = state.range(1) ? NoiseRates{0.01, 0.01, 0.01, 0.01} : NoiseRates{};
    const SimConfig c = bench_config(static_cast<int>(state.range(0)), noise);
    const LindbladGenerator gen(c);
    const JointDensityMatrix s = prepared_state(c);
    CMatrix out;
    for (auto _ : state) {
        gen.apply(s.rho, {30.0, 0.0}, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_GeneratorApply)->Args({2, 0})->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_GeneratorEvolve(benchmark::State &state) {
    const SimConfig c = bench_config(static_cast<int>(state.range(0)));
    const LindbladGenerator gen(c);
    const JointDensityMatrix s = prepared_state(c);
    for (auto _ : state) {
        CMatrix rho = s.rho;
        gen.evolve(rho, {30.0, 0.0}, c.max_dt(), 10);
        benchmark::DoNotOptimize(rho.data());
    }
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_GeneratorEvolve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RunDispersiveN2(benchmark::State &state) {
    const SimConfig c = bench_config(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_dispersive(c).fock_density.data());
    }
}
BENCHMARK(BM_RunDispersiveN2)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
