#include "gaea/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace gaea {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void RegularityConstants::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("RegularityConstants: gamma must be positive");
    if (block_G.empty()) throw std::invalid_argument("RegularityConstants: no block bounds");
    for (double g : block_G)
        if (!(g > 0.0))
            throw std::invalid_argument("RegularityConstants: block gradient bounds must be positive");
    if (!(F >= 0.0) || !std::isfinite(F))
        throw std::invalid_argument("RegularityConstants: F must be finite and nonnegative");
    if (!std::isfinite(f_star) || f_star > F)
        throw std::invalid_argument("RegularityConstants: f_star must be finite and <= F");
}

Vec Objective::block_stoch_grad(int block, const BlockPoint& x, Rng& rng) const {
    (void)rng;
    return block_grad(block, x);
}

double Objective::loss_sample(const BlockPoint& x, Rng& rng) const {
    (void)rng;
    return value(x);
}

// ---------------------------------------------------------------------------
// SimplexLinear
// ---------------------------------------------------------------------------

SimplexLinear::SimplexLinear(int k, Vec cost) : cost_(std::move(cost)) {
    if (k < 2) throw std::invalid_argument("SimplexLinear: k must be >= 2");
    if (static_cast<int>(cost_.size()) != k)
        throw std::invalid_argument("SimplexLinear: cost length must equal k");
    if (!all_finite(cost_)) throw std::invalid_argument("SimplexLinear: non-finite cost");
    geom_ = ProductGeometry({BlockGeometry::simplex(k)});
}

double SimplexLinear::value(const BlockPoint& x) const {
    check_dims(geom_, x, "SimplexLinear::value");
    return dot(cost_, x[0]);
}

Vec SimplexLinear::block_grad(int block, const BlockPoint& x) const {
    if (block != 0) throw std::invalid_argument("SimplexLinear: only block 0 exists");
    check_dims(geom_, x, "SimplexLinear::block_grad");
    return cost_;
}

RegularityConstants SimplexLinear::constants() const {
    RegularityConstants c;
    // A linear f is gamma-RWC for every gamma > 0; declare 1 for a usable
    // prox scale.
    c.gamma = 1.0;
    c.block_G = {std::max(linf_norm(cost_), 1e-12)};
    double mean = 0.0;
    for (double v : cost_) mean += v;
    c.F = mean / static_cast<double>(cost_.size());
    c.f_star = optimum();
    return c;
}

BlockPoint SimplexLinear::initial_point(Rng&) const {
    const int k = geom_.blocks[0].dim;
    return {Vec(static_cast<std::size_t>(k), 1.0 / k)};
}

double SimplexLinear::optimum() const {
    double m = cost_[0];
    for (double v : cost_) m = std::min(m, v);
    return m;
}

double SimplexLinear::optimum_by_vertex_enumeration() const {
    // A linear objective on the simplex attains its minimum at a vertex.
    const int k = static_cast<int>(cost_.size());
    double best = cost_[0];
    for (int i = 1; i < k; ++i) {
        Vec vertex(static_cast<std::size_t>(k), 0.0);
        vertex[static_cast<std::size_t>(i)] = 1.0;
        best = std::min(best, dot(cost_, vertex));
    }
    return best;
}

// ---------------------------------------------------------------------------
// RwcBenchmark
// ---------------------------------------------------------------------------

RwcBenchmark::RwcBenchmark(int n_w, int n_theta, double gamma, std::uint64_t seed, RwcOptions opts)
    : n_w_(n_w), n_theta_(n_theta), gamma_(gamma), omega_(3.0), opts_(opts) {
    if (n_w < 1) throw std::invalid_argument("RwcBenchmark: n_w must be >= 1");
    if (n_theta < 3 || n_theta % 3 != 0)
        throw std::invalid_argument("RwcBenchmark: n_theta must be a positive multiple of 3");
    if (!(gamma > 0.0)) throw std::invalid_argument("RwcBenchmark: gamma must be positive");
    if (opts_.cosine_scale < 0.0 || opts_.cosine_scale > 1.0)
        throw std::invalid_argument("RwcBenchmark: cosine_scale must be in [0, 1]");
    amplitude_ = opts_.cosine_scale * gamma_ / (omega_ * omega_);
    geom_ = ProductGeometry(
        {BlockGeometry::euclidean(n_w), BlockGeometry::simplex_product(n_theta / 3, 3)});
    Rng rng(seed);
    Rng pw = rng.stream("phase_w");
    for (int i = 0; i < n_w; ++i) phase_w_.push_back(kTwoPi * pw.next_double());
    Rng pt = rng.stream("phase_theta");
    for (int i = 0; i < n_theta; ++i) phase_theta_.push_back(kTwoPi * pt.next_double());
    Rng ct = rng.stream("theta_center");
    for (int i = 0; i < n_theta; ++i) theta_center_.push_back(ct.next_double());
}

double RwcBenchmark::value(const BlockPoint& x) const {
    check_dims(geom_, x, "RwcBenchmark::value");
    const Vec& w = x[0];
    const Vec& th = x[1];
    const double d = opts_.huber_delta;
    double val = 0.0;
    for (int i = 0; i < n_w_; ++i) {
        const double wi = w[static_cast<std::size_t>(i)];
        val += d * d * (std::sqrt(1.0 + wi * wi / (d * d)) - 1.0);
        val += amplitude_ * (1.0 + std::cos(omega_ * wi + phase_w_[static_cast<std::size_t>(i)]));
    }
    for (int i = 0; i < n_theta_; ++i) {
        const double ti = th[static_cast<std::size_t>(i)];
        const double c = ti - theta_center_[static_cast<std::size_t>(i)];
        val += 0.5 * opts_.theta_curv * c * c;
        val += amplitude_ * (1.0 + std::cos(omega_ * ti + phase_theta_[static_cast<std::size_t>(i)]));
    }
    return val;
}

Vec RwcBenchmark::block_grad(int block, const BlockPoint& x) const {
    check_dims(geom_, x, "RwcBenchmark::block_grad");
    const double d = opts_.huber_delta;
    if (block == 0) {
        Vec g(static_cast<std::size_t>(n_w_));
        for (int i = 0; i < n_w_; ++i) {
            const double wi = x[0][static_cast<std::size_t>(i)];
            g[static_cast<std::size_t>(i)] =
                wi / std::sqrt(1.0 + wi * wi / (d * d)) -
                amplitude_ * omega_ * std::sin(omega_ * wi + phase_w_[static_cast<std::size_t>(i)]);
        }
        return g;
    }
    if (block == 1) {
        Vec g(static_cast<std::size_t>(n_theta_));
        for (int i = 0; i < n_theta_; ++i) {
            const double ti = x[1][static_cast<std::size_t>(i)];
            g[static_cast<std::size_t>(i)] =
                opts_.theta_curv * (ti - theta_center_[static_cast<std::size_t>(i)]) -
                amplitude_ * omega_ *
                    std::sin(omega_ * ti + phase_theta_[static_cast<std::size_t>(i)]);
        }
        return g;
    }
    throw std::invalid_argument("RwcBenchmark: block index out of range");
}

Vec RwcBenchmark::block_stoch_grad(int block, const BlockPoint& x, Rng& rng) const {
    Vec g = block_grad(block, x);
    for (double& v : g) v += opts_.noise_std * rng.next_gaussian();
    return g;
}

RegularityConstants RwcBenchmark::constants() const {
    RegularityConstants c;
    c.gamma = gamma_;
    // w block: |pseudo-Huber'| <= delta and |cos'| <= A*omega per coordinate,
    // plus N(0, sigma^2) noise, all measured in l2.
    const double gw_coord = opts_.huber_delta + amplitude_ * omega_;
    const double g_w2 = n_w_ * (gw_coord * gw_coord + opts_.noise_std * opts_.noise_std);
    // theta block dual norm is sqrt(m)*linf. Entrywise |grad| <= a + A*omega;
    // the Gaussian max over n coordinates is bounded via 2 log(2n) + 2.
    const double m = static_cast<double>(n_theta_ / 3);
    const double bt = opts_.theta_curv + amplitude_ * omega_;
    const double gauss_max2 =
        opts_.noise_std * opts_.noise_std * (2.0 * std::log(2.0 * n_theta_) + 2.0);
    const double g_t2 = m * 2.0 * (bt * bt + gauss_max2);
    c.block_G = {std::sqrt(g_w2), std::sqrt(g_t2)};
    Rng dummy(0);
    c.F = value(initial_point(dummy));
    c.f_star = 0.0;  // every term of f is nonnegative
    return c;
}

BlockPoint RwcBenchmark::initial_point(Rng&) const {
    Vec w(static_cast<std::size_t>(n_w_), 0.0);
    Vec th(static_cast<std::size_t>(n_theta_), 1.0 / 3.0);
    return {w, th};
}

// ---------------------------------------------------------------------------

double measure_block_g_squared(const Objective& f, const BlockPoint& x, int block, int draws,
                               Rng& rng) {
    if (draws < 1) throw std::invalid_argument("measure_block_g_squared: draws must be >= 1");
    const BlockGeometry& g = f.geometry().blocks.at(static_cast<std::size_t>(block));
    double acc = 0.0;
    for (int i = 0; i < draws; ++i) {
        Rng draw = rng.stream(static_cast<std::uint64_t>(i));
        const double n = dual_norm(g, f.block_stoch_grad(block, x, draw));
        acc += n * n;
    }
    return acc / draws;
}

Matrix score_function_gradient(
    const ArchParams& theta, int samples,
    const std::function<double(const std::vector<int>&, Rng&)>& discrete_loss, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("score_function_gradient: samples must be >= 1");
    theta.check_simplex_rows();
    const int E = theta.num_edges();
    const int O = theta.num_ops();
    Matrix grad(E, O, 0.0);
    std::vector<int> choice(static_cast<std::size_t>(E));
    for (int s = 0; s < samples; ++s) {
        Rng draw = rng.stream(static_cast<std::uint64_t>(s));
        for (int e = 0; e < E; ++e) {
            const double u = draw.next_double();
            double cum = 0.0;
            int pick = O - 1;
            for (int o = 0; o < O; ++o) {
                cum += theta.values.at(e, o);
                if (u < cum) {
                    pick = o;
                    break;
                }
            }
            choice[static_cast<std::size_t>(e)] = pick;
        }
        const double loss = discrete_loss(choice, draw);
        for (int e = 0; e < E; ++e) {
            const int o = choice[static_cast<std::size_t>(e)];
            grad.at(e, o) += loss / theta.values.at(e, o);
        }
    }
    for (double& v : grad.data) v /= static_cast<double>(samples);
    return grad;
}

// ---------------------------------------------------------------------------

std::vector<std::string> problem_names() { return {"simplex_linear", "rwc_benchmark"}; }

std::unique_ptr<Objective> make_problem(const std::string& name, const nlohmann::json& params) {
    if (name == "simplex_linear") {
        const int k = params.at("k").get<int>();
        Vec cost;
        if (params.contains("cost")) {
            cost = params.at("cost").get<Vec>();
        } else {
            // Planted-gap costs: one zero-cost coordinate, the rest in
            // [0.5, 1]. This is the regime where the simplex geometry pays
            // off; see the dimension-separation experiment.
            Rng rng(params.value("cost_seed", std::uint64_t{0}));
            cost.assign(static_cast<std::size_t>(k), 0.0);
            const std::size_t star = rng.next_below(static_cast<std::size_t>(k));
            for (std::size_t i = 0; i < cost.size(); ++i)
                cost[i] = i == star ? 0.0 : 0.5 + 0.5 * rng.next_double();
        }
        return std::make_unique<SimplexLinear>(k, std::move(cost));
    }
    if (name == "rwc_benchmark") {
        RwcOptions opts;
        opts.noise_std = params.value("noise_std", opts.noise_std);
        opts.theta_curv = params.value("theta_curv", opts.theta_curv);
        opts.huber_delta = params.value("huber_delta", opts.huber_delta);
        opts.cosine_scale = params.value("cosine_scale", opts.cosine_scale);
        return std::make_unique<RwcBenchmark>(
            params.at("n_w").get<int>(), params.at("n_theta").get<int>(),
            params.at("gamma").get<double>(), params.value("seed", std::uint64_t{0}), opts);
    }
    throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

}  // namespace gaea
