#include "gaea/supernet.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gaea;

struct Fixture {
    SearchSpace space = SearchSpace::toy_three_edge(3, true);
    Vec w = init_shared_weights(space, 5);
    ArchParams theta = ArchParams::uniform(3, 3);
    Matrix X, Y;
    Fixture() {
        DiscreteArchitecture planted{{0, 2, 1}};
        DataSet d = make_planted_dataset(space, planted, w, 64, 0.02, 7);
        X = d.X;
        Y = d.Y;
    }
};

void bm_forward_mixture(benchmark::State& state) {
    Fixture f;
    const Matrix mixture = f.theta.mixture_weights();
    for (auto _ : state) benchmark::DoNotOptimize(forward_mixture(f.space, f.w, mixture, f.X));
}

void bm_loss_and_grads(benchmark::State& state) {
    Fixture f;
    for (auto _ : state)
        benchmark::DoNotOptimize(loss_and_grads(f.space, f.w, f.theta, f.X, f.Y, 0.01));
}

void bm_search_epoch(benchmark::State& state) {
    Fixture f;
    DataSet data{f.X, f.Y};
    SearchOptions opts;
    opts.eta_w = 0.08;
    opts.batch_size = 16;
    for (auto _ : state) {
        RunConfig cfg = RunConfig::practice_mode(1, 3);
        benchmark::DoNotOptimize(
            gaea_search(f.space, data, cfg, 0.3, SearchMode::single_level, opts));
    }
}

}  // namespace

BENCHMARK(bm_forward_mixture);
BENCHMARK(bm_loss_and_grads);
BENCHMARK(bm_search_epoch);
