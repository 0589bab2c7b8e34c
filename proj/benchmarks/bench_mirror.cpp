#include "gaea/geometry.hpp"
#include "gaea/mirror.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gaea;

Vec interior_simplex(int k, Rng& rng) {
    Vec x(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (double& v : x) {
        v = 0.05 + rng.next_double();
        sum += v;
    }
    for (double& v : x) v /= sum;
    return x;
}

void bm_eg_step(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(1);
    Vec theta = interior_simplex(k, rng);
    Vec g(static_cast<std::size_t>(k));
    for (double& v : g) v = rng.next_gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(eg_step(theta, g, 0.1));
}

void bm_euclidean_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    Vec x(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.next_gaussian();
    for (double& v : g) v = rng.next_gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(euclidean_step(x, g, 0.1));
}

void bm_generic_inner_solve_entropic(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(3);
    Vec theta = interior_simplex(k, rng);
    Vec g(static_cast<std::size_t>(k));
    for (double& v : g) v = rng.next_gaussian();
    const UpdateRule rule = UpdateRule::generic(BlockGeometry::simplex(k), 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(generic_mirror_step(theta, g, rule));
}

void bm_project_to_simplex(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(4);
    Vec x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.next_gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(project_to_simplex(x));
}

void bm_bregman_entropic(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(5);
    const BlockGeometry g = BlockGeometry::simplex(k);
    Vec u = interior_simplex(k, rng);
    Vec v = interior_simplex(k, rng);
    for (auto _ : state) benchmark::DoNotOptimize(bregman(g, u, v));
}

}  // namespace

BENCHMARK(bm_eg_step)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(bm_euclidean_step)->Arg(64)->Arg(4096);
BENCHMARK(bm_generic_inner_solve_entropic)->Arg(8)->Arg(64);
BENCHMARK(bm_project_to_simplex)->Arg(64)->Arg(1000);
BENCHMARK(bm_bregman_entropic)->Arg(64)->Arg(1000);
