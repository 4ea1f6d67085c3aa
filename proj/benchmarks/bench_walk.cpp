// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "twocoin/compile.hpp"
#include "twocoin/protocols.hpp"
#include "twocoin/tomography.hpp"
#include "twocoin/transpile.hpp"

namespace {

using namespace twocoin;

WalkState random_state(const HilbertLayout& l, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    WalkState s(l);
    double n2 = 0.0;
    for (auto& a : s.amplitudes) {
        a = cx{normal(gen), normal(gen)};
        n2 += std::norm(a);
    }
    for (auto& a : s.amplitudes) a /= std::sqrt(n2);
    return s;
}

void BM_step_cycle8(benchmark::State& state) {
    const HilbertLayout l(8, 2, 2);
    WalkState s = random_state(l, 1);
    for (auto _ : state) {
        s = step(s, 1, CoinOperator::pauli_x(), ShiftKind::cycle);
        benchmark::DoNotOptimize(s.amplitudes.data());
    }
}
BENCHMARK(BM_step_cycle8);

void BM_step_complete8(benchmark::State& state) {
    const HilbertLayout l(8, 8, 8);
    WalkState s = random_state(l, 2);
    const CoinOperator x8 = CoinOperator::generalized_x(8);
    for (auto _ : state) {
        s = step(s, 2, x8, ShiftKind::complete);
        benchmark::DoNotOptimize(s.amplitudes.data());
    }
}
BENCHMARK(BM_step_complete8);

void BM_evolve_cycle8_transfer(benchmark::State& state) {
    const Schedule sched = cycle8_schedule();
    const CoinStateSpec payload({cx{0.5, 0}, cx{std::sqrt(3.0) / 2.0, 0}});
    const WalkState start = make_product_state(sched.layout, 0, payload, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(start, sched).amplitudes.data());
    }
}
BENCHMARK(BM_evolve_cycle8_transfer);

void BM_evolve_ghz_transfer(benchmark::State& state) {
    const Schedule sched = complete_pst_schedule(8, 4);
    std::vector<cx> c(8, cx{0, 0});
    c[0] = c[7] = cx{1.0 / std::sqrt(2.0), 0.0};
    const WalkState start =
        make_product_state(sched.layout, 0, CoinStateSpec(std::move(c)), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(start, sched).amplitudes.data());
    }
}
BENCHMARK(BM_evolve_ghz_transfer);

void BM_unitary_of_dim512(benchmark::State& state) {
    const Schedule sched = complete_pst_schedule(8, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unitary_of(sched).data());
    }
}
BENCHMARK(BM_unitary_of_dim512);

void BM_compile_route_bell(benchmark::State& state) {
    const Schedule sched = simplify(complete_pst_schedule(4, 1));
    for (auto _ : state) {
        const Circuit routed = route(decompose_toffoli(compile_protocol(sched)),
                                     CouplingMap::line(6));
        benchmark::DoNotOptimize(routed.gates.data());
    }
}
BENCHMARK(BM_compile_route_bell);

void BM_sample_8192(benchmark::State& state) {
    const Schedule sched = complete_pst_schedule(8, 4);
    std::vector<cx> c(8, cx{0, 0});
    c[0] = c[7] = cx{1.0 / std::sqrt(2.0), 0.0};
    const WalkState final_state = evolve(
        make_product_state(sched.layout, 0, CoinStateSpec(std::move(c)), 0), sched);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto h = sample_measurement(final_state, Subsystem::coin1, PauliBasis::Z,
                                          8192, ++seed);
        benchmark::DoNotOptimize(h.shots);
    }
}
BENCHMARK(BM_sample_8192);

}  // namespace

BENCHMARK_MAIN();
