#include "gaea/supernet.hpp"

#include "gaea/mirror.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace gaea;

namespace {

Matrix gaussian_batch(int n, int d, std::uint64_t seed) {
    Matrix m(n, d);
    Rng rng(seed);
    for (double& v : m.data) v = rng.next_gaussian();
    return m;
}

// Count directed paths from the input to the output node.
int count_paths(const SearchSpace& s, int from) {
    if (from == s.output_node()) return 1;
    int total = 0;
    for (const auto& [dst, src] : s.edges)
        if (src == from) total += count_paths(s, dst);
    return total;
}

}  // namespace

TEST_SUITE_BEGIN("supernet");

TEST_CASE("search space validation and io round trip") {
    SearchSpace s = SearchSpace::toy_three_edge();
    CHECK(s.num_edges() == 3);
    CHECK(s.num_ops() == 3);
    CHECK(s.num_architectures() == 27);
    SearchSpace back = SearchSpace::from_json(s.to_json());
    CHECK(back.num_nodes == s.num_nodes);
    CHECK(back.edges == s.edges);
    CHECK(back.ops == s.ops);

    SearchSpace bad = s;
    bad.edges.push_back({0, 2});  // violates src < dst
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    SearchSpace big;
    big.num_nodes = 8;
    big.feat_dim = 2;
    for (int i = 1; i < 8; ++i)
        for (int j = 0; j < i; ++j) big.edges.push_back({i, j});
    big.ops = {OpKind::zero, OpKind::identity, OpKind::softplus};
    CHECK_THROWS_AS(big.num_architectures(), std::invalid_argument);  // 3^28 > 2^16
}

TEST_CASE("one-hot mixture equals the discrete forward pass exactly") {
    SearchSpace s = SearchSpace::toy_three_edge(3);
    Vec w = init_shared_weights(s, 5);
    Matrix X = gaussian_batch(10, 3, 2);

    // planted: (1,0)=linear, (2,0)=zero, (2,1)=softplus
    DiscreteArchitecture a{{0, 2, 1}};
    Matrix pred = forward_mixture(s, w, a.one_hot(3), X);

    // Independent composition: softplus(W x) computed by hand.
    const WeightLayout layout = WeightLayout::build(s);
    const int off = layout.offset[0][0];
    for (int r = 0; r < X.rows; ++r)
        for (int c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (int b = 0; b < 3; ++b) acc += w[static_cast<std::size_t>(off + c * 3 + b)] * X.at(r, b);
            const double soft = std::max(acc, 0.0) + std::log1p(std::exp(-std::fabs(acc)));
            CHECK(pred.at(r, c) == soft);  // exact: zero rows contribute 0.0 exactly
        }
}

TEST_CASE("all-identity operations count paths") {
    SearchSpace s;
    s.num_nodes = 4;
    s.feat_dim = 2;
    s.edges = {{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}};
    s.ops = {OpKind::identity};
    s.validate();
    Vec w = init_shared_weights(s, 0);
    CHECK(w.empty());
    Matrix X = gaussian_batch(6, 2, 3);
    Matrix mixture(s.num_edges(), 1, 1.0);
    Matrix pred = forward_mixture(s, w, mixture, X);
    const int paths = count_paths(s, 0);
    CHECK(paths == 3);  // 0-1-3, 0-1-2-3, 0-2-3
    for (std::size_t i = 0; i < pred.data.size(); ++i)
        CHECK(pred.data[i] == doctest::Approx(paths * X.data[i]).epsilon(1e-15));
}

TEST_CASE("zero operation everywhere yields zero output and zero loss") {
    SearchSpace s = SearchSpace::toy_three_edge(3);
    Vec w = init_shared_weights(s, 1);
    Matrix X = gaussian_batch(5, 3, 9);
    DiscreteArchitecture zeros{{2, 2, 2}};  // op 2 is zero
    Matrix pred = forward_mixture(s, w, zeros.one_hot(3), X);
    for (double v : pred.data) CHECK(v == 0.0);
    Matrix Y(5, 3, 0.0);
    CHECK(mixture_loss(s, w, zeros.one_hot(3), X, Y, 0.0) == 0.0);
}

TEST_CASE("hand-coded gradients match finite differences in both charts") {
    SearchSpace s = SearchSpace::toy_three_edge(2);
    Vec w = init_shared_weights(s, 7);
    Matrix X = gaussian_batch(8, 2, 4);
    Matrix Y = gaussian_batch(8, 2, 5);
    const double lambda = 0.01;

    for (ParamChart chart : {ParamChart::direct_simplex, ParamChart::softmax_logits}) {
        ArchParams theta;
        theta.chart = chart;
        theta.values = Matrix(3, 3);
        Rng rng(8);
        for (int e = 0; e < 3; ++e) {
            if (chart == ParamChart::direct_simplex) {
                Vec row(3);
                double sum = 0.0;
                for (double& v : row) {
                    v = 0.2 + rng.next_double();
                    sum += v;
                }
                for (double& v : row) v /= sum;
                theta.values.set_row(e, row);
            } else {
                theta.values.set_row(e, {rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()});
            }
        }

        LossGrads lg = loss_and_grads(s, w, theta, X, Y, lambda);

        auto loss_of_w = [&](const Vec& wp) {
            return loss_and_grads(s, wp, theta, X, Y, lambda).loss;
        };
        Vec fd_w = finite_diff_grad(loss_of_w, w, 1e-5);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            num += (fd_w[i] - lg.grad_w[i]) * (fd_w[i] - lg.grad_w[i]);
            den += lg.grad_w[i] * lg.grad_w[i];
        }
        CHECK(std::sqrt(num) <= 1e-4 * std::max(1.0, std::sqrt(den)));

        auto loss_of_theta = [&](const Vec& tv) {
            ArchParams tp = theta;
            tp.values.data = tv;
            return loss_and_grads(s, w, tp, X, Y, lambda).loss;
        };
        Vec fd_t = finite_diff_grad(loss_of_theta, theta.values.data, 1e-5);
        num = den = 0;
        for (std::size_t i = 0; i < fd_t.size(); ++i) {
            num += (fd_t[i] - lg.grad_theta.data[i]) * (fd_t[i] - lg.grad_theta.data[i]);
            den += lg.grad_theta.data[i] * lg.grad_theta.data[i];
        }
        CHECK(std::sqrt(num) <= 1e-4 * std::max(1.0, std::sqrt(den)));
    }
}

TEST_CASE("perfect fit drives the weight gradient to zero") {
    SearchSpace s = SearchSpace::toy_three_edge(2);
    Vec w = init_shared_weights(s, 3);
    Matrix X = gaussian_batch(12, 2, 6);
    DiscreteArchitecture a{{0, 2, 1}};
    Matrix Y = forward_mixture(s, w, a.one_hot(3), X);  // targets generated by the net itself
    ArchParams theta;
    theta.values = a.one_hot(3);
    // push rows slightly inside the simplex so the chart is valid
    for (double& v : theta.values.data) v = std::max(v, 1e-12);
    LossGrads lg = loss_and_grads(s, w, theta, X, Y, 0.0);
    CHECK(lg.loss <= 1e-18);
    CHECK(l2_norm(lg.grad_w) <= 1e-9);
}

TEST_CASE("forward is linear in a single edge row at the feature level") {
    SearchSpace s = SearchSpace::toy_three_edge(3);
    Vec w = init_shared_weights(s, 11);
    Matrix X = gaussian_batch(7, 3, 12);
    Rng rng(13);
    const int edge = 2;  // (2,1): destination is the output node
    const double alpha = 0.3;

    Matrix base(3, 3, 1.0 / 3.0);
    Matrix ma = base, mb = base;
    Vec rowa(3), rowb(3);
    double sa = 0, sb = 0;
    for (int i = 0; i < 3; ++i) {
        rowa[static_cast<std::size_t>(i)] = 0.1 + rng.next_double();
        rowb[static_cast<std::size_t>(i)] = 0.1 + rng.next_double();
        sa += rowa[static_cast<std::size_t>(i)];
        sb += rowb[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < 3; ++i) {
        rowa[static_cast<std::size_t>(i)] /= sa;
        rowb[static_cast<std::size_t>(i)] /= sb;
    }
    ma.set_row(edge, rowa);
    mb.set_row(edge, rowb);
    Matrix mix = base;
    Vec mixed(3);
    for (int i = 0; i < 3; ++i)
        mixed[static_cast<std::size_t>(i)] =
            alpha * rowa[static_cast<std::size_t>(i)] + (1 - alpha) * rowb[static_cast<std::size_t>(i)];
    mix.set_row(edge, mixed);

    ForwardTrace ta, tb, tm;
    forward_mixture(s, w, ma, X, &ta);
    forward_mixture(s, w, mb, X, &tb);
    forward_mixture(s, w, mix, X, &tm);
    const int dst = s.edges[edge].first;
    for (std::size_t i = 0; i < tm.node_features[static_cast<std::size_t>(dst)].data.size(); ++i) {
        const double want = alpha * ta.node_features[static_cast<std::size_t>(dst)].data[i] +
                            (1 - alpha) * tb.node_features[static_cast<std::size_t>(dst)].data[i];
        CHECK(tm.node_features[static_cast<std::size_t>(dst)].data[i] ==
              doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("softmax chart and direct chart agree as functions") {
    SearchSpace s = SearchSpace::toy_three_edge(2);
    Vec w = init_shared_weights(s, 15);
    Matrix X = gaussian_batch(6, 2, 16);
    Matrix Y = gaussian_batch(6, 2, 17);

    ArchParams logits = ArchParams::zero_logits(3, 3);
    Rng rng(18);
    for (double& v : logits.values.data) v = rng.next_gaussian();
    ArchParams direct;
    direct.chart = ParamChart::direct_simplex;
    direct.values = logits.mixture_weights();

    const double la = loss_and_grads(s, w, logits, X, Y, 0.0).loss;
    const double lb = loss_and_grads(s, w, direct, X, Y, 0.0).loss;
    CHECK(la == doctest::Approx(lb).epsilon(1e-12));

    // softmax(0) is uniform
    ArchParams zero = ArchParams::zero_logits(2, 4);
    Matrix mw = zero.mixture_weights();
    for (double v : mw.data) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("discretize takes the row argmax with index tie-break") {
    ArchParams theta;
    theta.values = Matrix(3, 3);
    theta.values.set_row(0, {1.0, 0.0, 0.0});
    theta.values.set_row(1, {0.2, 0.5, 0.3});
    theta.values.set_row(2, {0.5, 0.5, 0.0});
    DiscreteArchitecture a = discretize(theta);
    CHECK(a.op_per_edge == std::vector<int>{0, 1, 0});

    ArchParams onehot;
    onehot.values = Matrix(1, 3);
    onehot.values.set_row(0, {0.0, 0.0, 1.0});
    CHECK(discretize(onehot).op_per_edge == std::vector<int>{2});
}

TEST_CASE("dataset csv round trip") {
    SearchSpace s = SearchSpace::toy_three_edge(3);
    DiscreteArchitecture planted{{0, 2, 1}};
    Vec pw = init_shared_weights(s, 23);
    DataSet d = make_planted_dataset(s, planted, pw, 20, 0.05, 99);
    const std::string path = std::filesystem::temp_directory_path() / "gaea_test_data.csv";
    d.save_csv(path);
    DataSet back = DataSet::load_csv(path, 3);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.X.data.size(); ++i) {
        CHECK(back.X.data[i] == d.X.data[i]);
        CHECK(back.Y.data[i] == d.Y.data[i]);
    }
    std::remove(path.c_str());
}

TEST_CASE("searches are deterministic and respect frozen-theta warmup") {
    SearchSpace s = SearchSpace::toy_three_edge(3);
    DiscreteArchitecture planted{{0, 2, 1}};
    DataSet data = make_planted_dataset(s, planted, init_shared_weights(s, 23), 64, 0.05, 99);

    RunConfig cfg = RunConfig::practice_mode(4, 5);
    SearchOptions opts;
    opts.batch_size = 16;

    SUBCASE("eta_arch = 0 keeps theta uniform and entropy at log |O|") {
        RunRecord rec = gaea_search(s, data, cfg, 0.0, SearchMode::single_level, opts);
        for (double h : rec.entropy) CHECK(h == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        ArchParams theta = arch_params_from_record(s, rec);
        for (double v : theta.values.data) CHECK(v == doctest::Approx(1.0 / 3.0));
    }

    SUBCASE("warmup freezes theta") {
        opts.warmup_epochs = 2;
        RunRecord rec = gaea_search(s, data, cfg, 0.3, SearchMode::single_level, opts);
        CHECK(rec.entropy[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        CHECK(rec.entropy[1] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        CHECK(rec.entropy[3] < std::log(3.0));
    }

    SUBCASE("bit-identical reruns for each variant") {
        for (int variant = 0; variant < 3; ++variant) {
            auto run = [&]() {
                if (variant == 0) return gaea_search(s, data, cfg, 0.2, SearchMode::single_level, opts);
                if (variant == 1)
                    return baseline_softmax_search(s, data, cfg, 0.2, SearchMode::single_level, opts);
                return score_function_search(s, data, cfg, 0.2, SearchMode::single_level, opts);
            };
            RunRecord a = run();
            RunRecord b = run();
            CHECK(same_trajectory(a, b));
        }
    }

    SUBCASE("bilevel records validation loss") {
        RunRecord rec = gaea_search(s, data, cfg, 0.2, SearchMode::bilevel, opts);
        CHECK(rec.extra_series.count("val_loss") == 1);
        CHECK(rec.extra_series.at("val_loss").size() == 4);
    }

    SUBCASE("zero architecture gradient keeps the softmax baseline uniform") {
        RunRecord rec = baseline_softmax_search(s, data, cfg, 0.0, SearchMode::single_level, opts);
        ArchParams theta = arch_params_from_record(s, rec);
        CHECK(theta.chart == ParamChart::softmax_logits);
        Matrix mw = theta.mixture_weights();
        for (double v : mw.data) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("enumeration oracle") {
    SUBCASE("single edge lists every operation") {
        SearchSpace s;
        s.num_nodes = 2;
        s.feat_dim = 2;
        s.edges = {{1, 0}};
        s.ops = {OpKind::linear, OpKind::softplus, OpKind::identity, OpKind::zero};
        s.validate();
        DiscreteArchitecture planted{{0}};
        DataSet data = make_planted_dataset(s, planted, init_shared_weights(s, 1), 48, 0.01, 2);
        OracleTrainConfig cfg;
        cfg.epochs = 10;
        auto ranked = enumerate_oracle(s, data, cfg);
        CHECK(ranked.size() == 4);
        for (std::size_t i = 1; i < ranked.size(); ++i)
            CHECK(ranked[i - 1].final_loss <= ranked[i].final_loss);
    }

    SUBCASE("the planted architecture ranks first on its own task") {
        SearchSpace s = SearchSpace::toy_three_edge(3, true);
        DiscreteArchitecture planted{{0, 2, 1}};
        Vec pw = init_shared_weights(s, 17 ^ 0x5eedULL);
        for (double& v : pw) v *= 3.5;
        DataSet data = make_planted_dataset(s, planted, pw, 256, 0.02, 17);
        OracleTrainConfig cfg;
        cfg.epochs = 40;
        cfg.batch_size = 16;
        cfg.eta_w = 0.08;
        auto ranked = enumerate_oracle(s, data, cfg);
        CHECK(ranked.size() == 27);
        CHECK(ranked[0].arch == planted);
        CHECK(ranked[0].final_loss < ranked[1].final_loss);
    }

    SUBCASE("isomorphic parameter-free architectures tie exactly") {
        SearchSpace s;
        s.num_nodes = 3;
        s.feat_dim = 2;
        s.edges = {{1, 0}, {2, 0}, {2, 1}};
        s.ops = {OpKind::identity, OpKind::softplus, OpKind::zero};
        s.validate();
        DataSet data = make_planted_dataset(s, DiscreteArchitecture{{1, 2, 0}},
                                            init_shared_weights(s, 3), 32, 0.02, 4);
        OracleTrainConfig cfg;
        cfg.epochs = 3;
        auto ranked = enumerate_oracle(s, data, cfg);
        // softplus then pass-through vs pass-through then softplus, middle
        // edge off in both: same function, same loss.
        auto loss_of = [&](const std::vector<int>& ops) {
            for (const auto& r : ranked)
                if (r.arch.op_per_edge == ops) return r.final_loss;
            REQUIRE(false);
            return 0.0;
        };
        CHECK(loss_of({1, 2, 0}) == doctest::Approx(loss_of({0, 2, 1})).epsilon(1e-9));
    }
}

TEST_CASE("supernet objective adapter") {
    SearchSpace s = SearchSpace::toy_three_edge(2);
    DataSet data = make_planted_dataset(s, DiscreteArchitecture{{0, 2, 1}},
                                        init_shared_weights(s, 31), 40, 0.05, 32);
    SupernetObjective f(s, data, 0.001, 8);
    CHECK(f.geometry().num_blocks() == 2);
    Rng rng(0);
    BlockPoint x = f.initial_point(rng);
    CHECK(product_feasible(f.geometry(), x));

    // Adapter gradients agree with the direct reverse-mode path.
    ArchParams theta = ArchParams::uniform(3, 3);
    LossGrads lg = loss_and_grads(s, x[0], theta, data.X, data.Y, 0.001);
    CHECK(l2_norm(f.block_grad(0, x)) == doctest::Approx(l2_norm(lg.grad_w)).epsilon(1e-12));
    Vec gt = f.block_grad(1, x);
    for (std::size_t i = 0; i < gt.size(); ++i)
        CHECK(gt[i] == doctest::Approx(lg.grad_theta.data[i]).epsilon(1e-12));

    // Minibatch gradients are unbiased for the full gradient (w block).
    Vec mean(x[0].size(), 0.0);
    Rng mr(55);
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
        Rng dr = mr.stream(static_cast<std::uint64_t>(i));
        add_scaled(mean, 1.0 / draws, f.block_stoch_grad(0, x, dr));
    }
    Vec full = f.block_grad(0, x);
    for (std::size_t i = 0; i < mean.size(); ++i)
        CHECK(std::fabs(mean[i] - full[i]) <= 0.1 * std::max(1.0, std::fabs(full[i])));
}

TEST_SUITE_END();
