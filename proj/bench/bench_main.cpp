// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "djw/hubbard.hpp"
#include "djw/oracles.hpp"
#include "djw/routing.hpp"
#include "djw/switch.hpp"

using namespace djw;

namespace {

Circuit hubbard_circuit(int cells, bool spinful) {
    HubbardSpec s;
    s.cells = cells;
    s.cells_y = spinful ? 1 : cells;
    s.spinful = spinful;
    return build_trotter_step(s).circuit;
}

void BM_DenseUnitaryParallel(benchmark::State &st) {
    Circuit c = hubbard_circuit(static_cast<int>(st.range(0)), false);
    for (auto _ : st) benchmark::DoNotOptimize(dense_unitary(c));
    st.counters["qubits"] = c.num_qubits();
}

void BM_DenseUnitarySerial(benchmark::State &st) {
    Circuit c = hubbard_circuit(static_cast<int>(st.range(0)), false);
    for (auto _ : st) benchmark::DoNotOptimize(dense_unitary_serial(c));
    st.counters["qubits"] = c.num_qubits();
}

void BM_SwitchBuild(benchmark::State &st) {
    const int L = static_cast<int>(st.range(0));
    LatticeShape shape({L, L});
    auto src = BoustrophedonSpec::from_widths({L});
    auto dst = BoustrophedonSpec::from_widths(std::vector<int>(L, 1));
    for (auto _ : st) {
        SwitchPlan p = boustrophedon_switch(src, dst, shape);
        sign_audit(p);
        benchmark::DoNotOptimize(p.compensated_circuit());
    }
}

void BM_TrotterStep(benchmark::State &st) {
    HubbardSpec s;
    s.cells = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(build_trotter_step(s));
}

void BM_Route2d(benchmark::State &st) {
    const int L = static_cast<int>(st.range(0));
    std::vector<int> perm(L * L);
    for (int i = 0; i < L * L; ++i) perm[i] = L * L - 1 - i;
    RoutingProblem p{LatticeShape({L, L}), perm};
    for (auto _ : st) benchmark::DoNotOptimize(route_2d(p));
}

}  // namespace

BENCHMARK(BM_DenseUnitaryParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseUnitarySerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SwitchBuild)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrotterStep)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Route2d)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
