#include <benchmark/benchmark.h>

#include "chatterkit/fd_oracle.hpp"
#include "chatterkit/series_builder.hpp"
#include "chatterkit/series_eval.hpp"
#include "chatterkit/spectral_heat.hpp"

using namespace chatterkit;

namespace {

const ChatterSequence& reference_sequence() {
    static const ChatterSequence seq =
        SeriesBuilder::run("0.5", ExponentSpec::squares(), 9, 256);
    return seq;
}

void BM_BuilderRun(benchmark::State& state) {
    const auto K = state.range(0);
    const int bits = static_cast<int>(state.range(1));
    for (auto _ : state) {
        ChatterSequence seq = SeriesBuilder::run("0.5", ExponentSpec::squares(), K, bits);
        benchmark::DoNotOptimize(seq);
    }
}
BENCHMARK(BM_BuilderRun)->Args({6, 128})->Args({9, 256})->Args({9, 512});

void BM_PartialSumAtProbe(benchmark::State& state) {
    const ChatterSequence& seq = reference_sequence();
    const auto L = state.range(0);
    const BigFloat log_z = seq.log_z(L);
    for (auto _ : state) {
        EvalResult r = eval_partial_sum_log(seq, L, log_z);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_PartialSumAtProbe)->Arg(3)->Arg(6)->Arg(9);

void BM_SignChangeScan(benchmark::State& state) {
    const ChatterSequence& seq = reference_sequence();
    const int samples = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto roots = find_sign_change_deltas(seq, 6, samples);
        benchmark::DoNotOptimize(roots);
    }
}
BENCHMARK(BM_SignChangeScan)->Arg(64)->Arg(256);

void BM_ForwardTerminalState(benchmark::State& state) {
    const BangBangControl control(1.0, -1, {0.3, 0.6, 0.9, 0.93, 0.99});
    const auto modes = state.range(0);
    for (auto _ : state) {
        CosineSeries y = forward_terminal_state(control, modes);
        benchmark::DoNotOptimize(y);
    }
    state.SetComplexityN(modes);
}
BENCHMARK(BM_ForwardTerminalState)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

void BM_CrankNicolson(benchmark::State& state) {
    const BangBangControl control(0.1, 1, {0.05});
    const auto nx = state.range(0);
    for (auto _ : state) {
        CrankNicolsonResult r = crank_nicolson_solve(control, nx, nx - 1);
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(nx);
}
BENCHMARK(BM_CrankNicolson)->RangeMultiplier(2)->Range(201, 1608)->Complexity();

void BM_AdjointTrace(benchmark::State& state) {
    const ChatterSequence& seq = reference_sequence();
    for (auto _ : state) {
        double v = adjoint_trace(seq, 6, 1.0, 0.93);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_AdjointTrace);

}  // namespace

BENCHMARK_MAIN();
