#include "gaea/problems.hpp"

#include "gaea/mirror.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace gaea;

TEST_SUITE_BEGIN("problems");

TEST_CASE("simplex linear basics") {
    SimplexLinear f(3, {1, 2, 3});
    CHECK(f.optimum() == 1.0);
    CHECK(f.optimum_by_vertex_enumeration() == 1.0);
    CHECK(f.value({{1, 0, 0}}) == 1.0);
    Rng rng(0);
    CHECK(f.value(f.initial_point(rng)) == doctest::Approx(2.0));

    // One expensive coordinate, zero elsewhere: optimum 0.
    SimplexLinear spike(4, {0, 100, 0, 0});
    CHECK(spike.optimum() == 0.0);

    // Random costs: closed form equals exhaustive vertex scan.
    Rng r(9);
    for (int rep = 0; rep < 20; ++rep) {
        Vec c(6);
        for (double& v : c) v = r.next_gaussian();
        SimplexLinear g(6, c);
        CHECK(g.optimum() == doctest::Approx(g.optimum_by_vertex_enumeration()).epsilon(1e-15));
    }
}

TEST_CASE("gradients match finite differences") {
    Rng rng(21);
    SUBCASE("simplex_linear") {
        SimplexLinear f(4, {0.5, -1.0, 2.0, 0.1});
        for (int rep = 0; rep < 10; ++rep) {
            Vec th(4);
            double s = 0;
            for (double& v : th) {
                v = 0.1 + rng.next_double();
                s += v;
            }
            for (double& v : th) v /= s;
            auto f1 = [&](const Vec& t) { return f.value({t}); };
            Vec fd = finite_diff_grad(f1, th, 1e-5);
            Vec an = f.block_grad(0, {th});
            for (int i = 0; i < 4; ++i) CHECK(std::fabs(fd[i] - an[i]) <= 1e-4 * std::max(1.0, std::fabs(an[i])));
        }
    }
    SUBCASE("rwc_benchmark") {
        RwcBenchmark f(3, 6, 2.0, 7);
        Rng init(0);
        for (int rep = 0; rep < 10; ++rep) {
            BlockPoint x = f.initial_point(init);
            for (double& v : x[0]) v = rng.next_gaussian();
            for (double& v : x[1]) v = 0.05 + 0.3 * rng.next_double();
            // w block
            auto fw = [&](const Vec& w) { return f.value({w, x[1]}); };
            Vec fd = finite_diff_grad(fw, x[0], 1e-5);
            Vec an = f.block_grad(0, x);
            double num = 0, den = 0;
            for (std::size_t i = 0; i < an.size(); ++i) {
                num += (fd[i] - an[i]) * (fd[i] - an[i]);
                den += an[i] * an[i];
            }
            CHECK(std::sqrt(num) <= 1e-4 * std::max(1.0, std::sqrt(den)));
            // theta block (the formula extends smoothly off the simplex)
            auto ft = [&](const Vec& t) { return f.value({x[0], t}); };
            fd = finite_diff_grad(ft, x[1], 1e-5);
            an = f.block_grad(1, x);
            num = den = 0;
            for (std::size_t i = 0; i < an.size(); ++i) {
                num += (fd[i] - an[i]) * (fd[i] - an[i]);
                den += an[i] * an[i];
            }
            CHECK(std::sqrt(num) <= 1e-4 * std::max(1.0, std::sqrt(den)));
        }
    }
}

TEST_CASE("rwc benchmark is gamma-RWC by construction") {
    const double gamma = 1.5;
    RwcBenchmark f(2, 6, gamma, 3);
    const ProductGeometry& pg = f.geometry();
    Rng rng(31);

    // Midpoint convexity of f + gamma * phi on random feasible segments.
    auto h = [&](const BlockPoint& x) { return f.value(x) + gamma * product_dgf(pg, x); };
    for (int rep = 0; rep < 2000; ++rep) {
        BlockPoint x(2), y(2);
        x[0] = {2.0 * rng.next_gaussian(), 2.0 * rng.next_gaussian()};
        y[0] = {2.0 * rng.next_gaussian(), 2.0 * rng.next_gaussian()};
        x[1].resize(6);
        y[1].resize(6);
        for (int s = 0; s < 2; ++s) {
            double sx = 0, sy = 0;
            for (int i = 0; i < 3; ++i) {
                x[1][3 * s + i] = 0.02 + rng.next_double();
                y[1][3 * s + i] = 0.02 + rng.next_double();
                sx += x[1][3 * s + i];
                sy += y[1][3 * s + i];
            }
            for (int i = 0; i < 3; ++i) {
                x[1][3 * s + i] /= sx;
                y[1][3 * s + i] /= sy;
            }
        }
        BlockPoint mid(2);
        for (int b = 0; b < 2; ++b) {
            mid[b] = x[b];
            for (std::size_t i = 0; i < mid[b].size(); ++i)
                mid[b][i] = 0.5 * (x[b][i] + y[b][i]);
        }
        CHECK(h(mid) <= 0.5 * h(x) + 0.5 * h(y) + 1e-9);
    }

    // 1-D grid scan: second differences of the w restriction stay >= -gamma.
    RwcBenchmark f1(1, 3, gamma, 5);
    Rng init(0);
    BlockPoint x = f1.initial_point(init);
    const double hstep = 1e-3;
    for (double w = -3.0; w <= 3.0; w += 1e-2) {
        auto at = [&](double u) {
            BlockPoint p = x;
            p[0][0] = u;
            return f1.value(p);
        };
        const double second = (at(w + hstep) - 2.0 * at(w) + at(w - hstep)) / (hstep * hstep);
        CHECK(second >= -gamma - 1e-4);
    }
}

TEST_CASE("stochastic oracle is unbiased with bounded second moment") {
    RwcBenchmark f(3, 6, 1.0, 11);
    Rng init(0);
    const BlockPoint x = f.initial_point(init);
    Rng rng(77);
    const int draws = 100000;
    const double sigma = f.options().noise_std;

    for (int block = 0; block < 2; ++block) {
        const Vec full = f.block_grad(block, x);
        Vec mean(full.size(), 0.0);
        for (int i = 0; i < draws; ++i) {
            Rng dr = rng.stream(static_cast<std::uint64_t>(block * draws + i));
            add_scaled(mean, 1.0 / draws, f.block_stoch_grad(block, x, dr));
        }
        const double se = sigma / std::sqrt(static_cast<double>(draws));
        for (std::size_t i = 0; i < full.size(); ++i)
            CHECK(std::fabs(mean[i] - full[i]) <= 4.0 * se);

        Rng mr = rng.stream("moment").stream(static_cast<std::uint64_t>(block));
        const double measured = measure_block_g_squared(f, x, block, draws, mr);
        const double declared = f.constants().block_G[static_cast<std::size_t>(block)];
        CHECK(measured <= declared * declared * 1.05);
    }
}

TEST_CASE("score function estimator") {
    SUBCASE("two ops, losses (0, 1): matches the analytic expectation gradient") {
        ArchParams theta;
        theta.values = Matrix(1, 2);
        theta.values.set_row(0, {0.3, 0.7});
        auto loss = [](const std::vector<int>& choice, Rng&) {
            return choice[0] == 0 ? 0.0 : 1.0;
        };
        Rng rng(5);
        const int N = 100000;
        Matrix g = score_function_gradient(theta, N, loss, rng);
        // E[ghat_o] = E[L | a = o]; per-sample variance of coordinate o is
        // bounded by L^2 / theta_o, so 4 standard errors cover the mean.
        const double se0 = std::sqrt(1.0 / 0.3) / std::sqrt(static_cast<double>(N));
        const double se1 = std::sqrt(1.0 / 0.7) / std::sqrt(static_cast<double>(N));
        CHECK(std::fabs(g.at(0, 0) - 0.0) <= 4.0 * se0);
        CHECK(std::fabs(g.at(0, 1) - 1.0) <= 4.0 * se1);
    }
    SUBCASE("constant loss has a vanishing simplex-tangent component") {
        ArchParams theta = ArchParams::uniform(2, 3);
        auto loss = [](const std::vector<int>&, Rng&) { return 2.5; };
        Rng rng(6);
        Matrix g = score_function_gradient(theta, 50000, loss, rng);
        for (int e = 0; e < 2; ++e) {
            double row_mean = 0.0;
            for (int o = 0; o < 3; ++o) row_mean += g.at(e, o) / 3.0;
            for (int o = 0; o < 3; ++o) CHECK(std::fabs(g.at(e, o) - row_mean) <= 0.15);
        }
    }
}

TEST_CASE("EG iteration counts on simplex_linear scale like log k") {
    // Iterations to 0.05-suboptimality under the classical decreasing EG
    // step; the implied constant C_k = T_k / log k must stay within 2x of
    // the geometric mean across three decades of k.
    auto iterations = [](const SimplexLinear& f) {
        const int k = static_cast<int>(f.cost().size());
        Vec theta(static_cast<std::size_t>(k), 1.0 / k);
        const double target = f.optimum() + 0.05;
        const double g_inf = linf_norm(f.cost());
        for (int t = 1; t <= 100000; ++t) {
            if (dot(f.cost(), theta) <= target) return t - 1;
            const double eta = std::sqrt(2.0 * std::log(static_cast<double>(k)) / t) / g_inf;
            theta = eg_step(theta, f.cost(), eta);
        }
        return 100000;
    };
    std::vector<double> constants;
    for (int k : {10, 100, 1000}) {
        std::vector<int> ts;
        for (std::uint64_t cs = 0; cs < 10; ++cs) {
            auto f = make_problem("simplex_linear", {{"k", k}, {"cost_seed", cs}});
            ts.push_back(iterations(*dynamic_cast<SimplexLinear*>(f.get())));
        }
        std::sort(ts.begin(), ts.end());
        constants.push_back(ts[ts.size() / 2] / std::log(static_cast<double>(k)));
    }
    double geomean = 1.0;
    for (double c : constants) geomean *= c;
    geomean = std::cbrt(geomean);
    for (double c : constants) {
        CHECK(c <= 2.0 * geomean);
        CHECK(c >= 0.5 * geomean);
    }
}

TEST_CASE("problem registry") {
    auto names = problem_names();
    CHECK(names.size() == 2);
    auto f = make_problem("rwc_benchmark", {{"n_w", 2}, {"n_theta", 3}, {"gamma", 1.0}});
    CHECK(f->geometry().num_blocks() == 2);
    auto g = make_problem("simplex_linear", {{"k", 10}, {"cost_seed", 4}});
    CHECK(g->geometry().blocks[0].dim == 10);
    CHECK_THROWS_AS(make_problem("nope", {}), std::invalid_argument);
}

TEST_SUITE_END();
