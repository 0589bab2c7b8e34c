#include "gaea/blockmd.hpp"
#include "gaea/stationarity.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gaea;

void bm_two_block_iterations(benchmark::State& state) {
    const int T = static_cast<int>(state.range(0));
    RwcBenchmark f(4, 6, 0.5, 1);
    Rng ir(0);
    const BlockPoint init = f.initial_point(ir);
    const BlockGeometry& gt = f.geometry().blocks[1];
    const std::array<UpdateRule, 2> rules = {
        UpdateRule::euclidean(4, 0.1), UpdateRule::eg_simplex_product(gt.num_simplices, 3, 0.1)};
    for (auto _ : state) {
        RunConfig cfg = RunConfig::theory_mode(T, 1);
        benchmark::DoNotOptimize(run_two_block(f, init, cfg, rules));
    }
    state.SetItemsProcessed(state.iterations() * T);
}

void bm_bregman_stationarity(benchmark::State& state) {
    RwcBenchmark f(4, 6, 0.5, 1);
    Rng ir(0);
    const BlockPoint x = f.initial_point(ir);
    const ProxConfig cfg = ProxConfig::for_gamma(f.gamma());
    for (auto _ : state) benchmark::DoNotOptimize(bregman_stationarity(f, x, cfg));
}

}  // namespace

BENCHMARK(bm_two_block_iterations)->Arg(256)->Arg(1024);
BENCHMARK(bm_bregman_stationarity);
