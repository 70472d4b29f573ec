#include <benchmark/benchmark.h>

#include "toric/mollifier.hpp"
#include "toric/sheaf.hpp"

using namespace toric;

namespace {

Fan p2() { return build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}); }

ShardComplex p2_shard(long long a) {
    Fan f = p2();
    return twisted_polytope_sheaf(f, cartier_data(f, {{a, a, a}}));
}

void BM_open_feasible(benchmark::State& state) {
    OpenPolyhedron p{{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -3}}, 2};
    for (auto _ : state) benchmark::DoNotOptimize(feasible(p));
}
BENCHMARK(BM_open_feasible);

void BM_stalk(benchmark::State& state) {
    auto c = p2_shard(2);
    RationalVec x = {Rational(-1) / 3, Rational(-1) / 5};
    for (auto _ : state) benchmark::DoNotOptimize(stalk(c, x));
}
BENCHMARK(BM_stalk);

void BM_convolve_stalk(benchmark::State& state) {
    auto c = p2_shard(1);
    RationalVec x = {Rational(-1) / 3, Rational(-1) / 5};
    for (auto _ : state) benchmark::DoNotOptimize(convolve_stalk(c, c, x));
}
BENCHMARK(BM_convolve_stalk);

void BM_region_weights(benchmark::State& state) {
    Fan f = p2();
    QuadratureConfig q;
    q.samples = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(region_weights(f, 0.1, {0.6, 0.8}, q));
}
BENCHMARK(BM_region_weights)->Arg(10000)->Arg(100000);

void BM_grad_smoothed_support(benchmark::State& state) {
    Fan f = p2();
    auto cd = cartier_data(f, {{1, 1, 1}});
    QuadratureConfig q;
    q.samples = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_smoothed_support(f, cd, 0.1, {0.6, 0.8}, q, false));
}
BENCHMARK(BM_grad_smoothed_support)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
