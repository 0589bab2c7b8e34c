#include "gaea/mirror.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace gaea;

namespace {

Vec random_interior_simplex(int k, Rng& rng) {
    Vec x(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (double& v : x) {
        v = 0.05 + rng.next_double();
        sum += v;
    }
    for (double& v : x) v /= sum;
    return x;
}

}  // namespace

TEST_SUITE_BEGIN("mirror");

TEST_CASE("euclidean step") {
    Vec out = euclidean_step({1, 1}, {1, -1}, 0.5);
    CHECK(out[0] == doctest::Approx(0.5));
    CHECK(out[1] == doctest::Approx(1.5));
    CHECK(euclidean_step({2, -3}, {0, 0}, 0.7) == Vec{2, -3});
    CHECK(euclidean_step({2, -3}, {5, 1}, 0.0) == Vec{2, -3});
}

TEST_CASE("eg step closed form") {
    Vec out = eg_step({0.5, 0.5}, {0, 0}, 1.0);
    CHECK(out[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(0.5).epsilon(1e-15));

    // theta * exp(-eta g) renormalized: (0.5/4, 0.5) -> (0.2, 0.8)
    out = eg_step({0.5, 0.5}, {std::log(4.0), 0.0}, 1.0);
    CHECK(out[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(0.8).epsilon(1e-12));

    // Shift invariance: constants in the gradient cancel in the normalizer.
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        Vec theta = random_interior_simplex(4, rng);
        Vec g(4);
        for (double& v : g) v = 3.0 * rng.next_gaussian();
        Vec shifted = g;
        for (double& v : shifted) v += 7.3;
        Vec a = eg_step(theta, g, 0.9);
        Vec b = eg_step(theta, shifted, 0.9);
        for (int j = 0; j < 4; ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-13));
    }

    CHECK_THROWS_AS(eg_step({1.0, 0.0}, {0, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(eg_step({0.5, 0.5}, {std::nan(""), 0}, 1.0), std::invalid_argument);
}

TEST_CASE("eg step stays on the simplex for any finite gradient") {
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        const int k = 2 + static_cast<int>(rng.next_below(6));
        Vec theta = random_interior_simplex(k, rng);
        Vec g(static_cast<std::size_t>(k));
        for (double& v : g) v = 20.0 * rng.next_gaussian();
        const double eta = 100.0 * rng.next_double();
        Vec out = eg_step(theta, g, eta);
        double sum = 0.0;
        for (double v : out) {
            CHECK(v > 0.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
    // Extreme suppression underflows but stays strictly positive.
    Vec out = eg_step({0.5, 0.5}, {0.0, 20.0}, 100.0);
    CHECK(out[1] > 0.0);
    CHECK(out[0] + out[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eg step tilts multiplicatively toward lower gradients") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Vec theta = random_interior_simplex(5, rng);
        Vec g(5);
        for (double& v : g) v = 2.0 * rng.next_gaussian();
        Vec out = eg_step(theta, g, 0.5);
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                if (g[a] < g[b]) CHECK(out[a] / theta[a] > out[b] / theta[b]);
    }
}

TEST_CASE("generic mirror step matches the closed forms") {
    Rng rng(4);

    SUBCASE("unconstrained euclidean is exact") {
        for (int i = 0; i < 100; ++i) {
            Vec x(6), g(6);
            for (double& v : x) v = 2.0 * rng.next_gaussian();
            for (double& v : g) v = 2.0 * rng.next_gaussian();
            const double eta = 0.01 + rng.next_double();
            UpdateRule rule = UpdateRule::generic(BlockGeometry::euclidean(6), eta);
            Vec got = generic_mirror_step(x, g, rule);
            Vec want = euclidean_step(x, g, eta);
            for (int j = 0; j < 6; ++j) CHECK(got[j] == want[j]);  // bit-exact
        }
    }

    SUBCASE("entropic simplex matches eg within 1e-9") {
        for (int i = 0; i < 100; ++i) {
            const int k = 2 + static_cast<int>(rng.next_below(4));
            Vec theta = random_interior_simplex(k, rng);
            Vec g(static_cast<std::size_t>(k));
            for (double& v : g) v = 2.0 * rng.next_gaussian();
            const double eta = 0.01 + rng.next_double();
            UpdateRule rule = UpdateRule::generic(BlockGeometry::simplex(k), eta);
            Vec got = generic_mirror_step(theta, g, rule);
            Vec want = eg_step(theta, g, eta);
            for (int j = 0; j < k; ++j) CHECK(std::fabs(got[j] - want[j]) <= 1e-9);
        }
    }

    SUBCASE("projected euclidean on the simplex matches the projection") {
        for (int i = 0; i < 100; ++i) {
            Vec theta = random_interior_simplex(4, rng);
            Vec g(4);
            for (double& v : g) v = 2.0 * rng.next_gaussian();
            UpdateRule closed = UpdateRule::projected_euclidean_simplex(4, 0.3);
            UpdateRule generic = UpdateRule::generic(BlockGeometry::euclidean_on_simplex(4), 0.3);
            Vec a = generic_mirror_step(theta, g, closed);
            Vec b = generic_mirror_step(theta, g, generic);
            for (int j = 0; j < 4; ++j) CHECK(std::fabs(a[j] - b[j]) <= 1e-9);
        }
    }

    SUBCASE("eta -> 0 returns x") {
        Vec theta = random_interior_simplex(3, rng);
        UpdateRule rule = UpdateRule::generic(BlockGeometry::simplex(3), 1e-13);
        Vec out = generic_mirror_step(theta, {1.0, -2.0, 0.5}, rule);
        for (int j = 0; j < 3; ++j) CHECK(std::fabs(out[j] - theta[j]) <= 1e-9);
    }
}

TEST_CASE("product eg step applies row-wise") {
    ArchParams theta = ArchParams::uniform(3, 4);
    Matrix zero(3, 4, 0.0);
    ArchParams same = product_eg_step(theta, zero, 0.5);
    for (std::size_t i = 0; i < theta.values.data.size(); ++i)
        CHECK(same.values.data[i] == doctest::Approx(theta.values.data[i]).epsilon(1e-15));

    // Single edge degenerates to eg_step.
    Rng rng(5);
    ArchParams one;
    one.values = Matrix(1, 4);
    one.values.set_row(0, random_interior_simplex(4, rng));
    Matrix g1(1, 4);
    for (double& v : g1.data) v = rng.next_gaussian();
    ArchParams stepped = product_eg_step(one, g1, 0.7);
    Vec want = eg_step(one.values.row(0), g1.row(0), 0.7);
    for (int j = 0; j < 4; ++j) CHECK(stepped.values.at(0, j) == doctest::Approx(want[j]));

    // Two-edge case: row-wise oracle.
    ArchParams two;
    two.values = Matrix(2, 3);
    two.values.set_row(0, {0.2, 0.3, 0.5});
    two.values.set_row(1, {0.6, 0.2, 0.2});
    Matrix g2(2, 3);
    g2.set_row(0, {1.0, 0.0, -1.0});
    g2.set_row(1, {0.0, 2.0, -0.5});
    ArchParams out = product_eg_step(two, g2, 0.4);
    for (int e = 0; e < 2; ++e) {
        Vec row = eg_step(two.values.row(e), g2.row(e), 0.4);
        for (int j = 0; j < 3; ++j) CHECK(out.values.at(e, j) == doctest::Approx(row[j]));
    }
}

TEST_CASE("update rule validation") {
    CHECK_THROWS_AS(UpdateRule::euclidean(3, 0.0), std::invalid_argument);
    UpdateRule bad{BlockGeometry::simplex(3), 0.1, UpdateMode::closed_form_euclidean};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    UpdateRule bad2{BlockGeometry::euclidean(3), 0.1, UpdateMode::closed_form_eg};
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_SUITE_END();
