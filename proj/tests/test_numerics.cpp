#include "gaea/numerics.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

using namespace gaea;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("dot products") {
    CHECK(dot({1, 2}, {3, 4}) == doctest::Approx(11.0));
    CHECK(dot({5, -1, 2}, {0, 0, 0}) == 0.0);
    CHECK(dot({0, 1, 0}, {0, 1, 0}) == 1.0);
    CHECK_THROWS_AS(dot({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("rng determinism and splitting") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(42), d(43);
    bool same = true;
    for (int i = 0; i < 10; ++i) same = same && c.next_u64() == d.next_u64();
    CHECK_FALSE(same);

    // Child streams are independent of parent draws.
    Rng p1(7), p2(7);
    (void)p1.next_u64();
    (void)p1.next_u64();
    Rng c1 = p1.stream("data");
    Rng c2 = p2.stream("data");
    for (int i = 0; i < 20; ++i) CHECK(c1.next_u64() == c2.next_u64());

    // Distinct labels and salts give distinct streams.
    CHECK(Rng(1).stream("block").next_u64() != Rng(1).stream("data").next_u64());
    CHECK(Rng(1).stream(std::uint64_t{3}).next_u64() != Rng(1).stream(std::uint64_t{4}).next_u64());
}

TEST_CASE("rng ranges") {
    Rng r(0);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    std::set<std::size_t> seen;
    for (int i = 0; i < 200; ++i) seen.insert(r.next_below(5));
    CHECK(seen.size() == 5);
    for (std::size_t v : seen) CHECK(v < 5);
    double mean = 0.0;
    for (int i = 0; i < 10000; ++i) mean += r.next_gaussian();
    CHECK(std::fabs(mean / 10000.0) < 0.05);
}

TEST_CASE("finite differences against analytic derivatives") {
    auto square = [](const Vec& x) { return x[0] * x[0]; };
    Vec g = finite_diff_grad(square, {3.0}, 1e-5);
    CHECK(g[0] == doctest::Approx(6.0).epsilon(1e-6));

    auto constant = [](const Vec&) { return 4.2; };
    g = finite_diff_grad(constant, {1.0, -2.0, 0.5}, 1e-5);
    for (double v : g) CHECK(v == 0.0);

    const Vec c = {2.5, -0.75, 1e3};
    auto linear = [&](const Vec& x) { return dot(c, x); };
    g = finite_diff_grad(linear, {0.1, 0.2, 0.3}, 1e-5);
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(g[i] == doctest::Approx(c[i]).epsilon(1e-8));

    auto bad = [](const Vec& x) { return std::log(x[0]); };
    CHECK_THROWS_AS(finite_diff_grad(bad, {0.0}, 1e-5), std::runtime_error);
    CHECK_THROWS_AS(finite_diff_grad(square, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("hashing and permutations") {
    CHECK(hash_vec({1.0, 2.0}) != hash_vec({1.0, 2.0000000001}));
    CHECK(hash_vec({1.0, 2.0}) == hash_vec({1.0, 2.0}));

    Rng r(5);
    auto p = random_permutation(17, r);
    std::set<int> s(p.begin(), p.end());
    CHECK(s.size() == 17);
    CHECK(*s.begin() == 0);
    CHECK(*s.rbegin() == 16);
}

TEST_SUITE_END();
