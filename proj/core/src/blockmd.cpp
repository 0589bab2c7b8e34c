#include "gaea/blockmd.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace gaea {

namespace {

// Mean entropy across every simplex in the point, or -1 when there are none.
double mean_simplex_entropy(const ProductGeometry& pg, const BlockPoint& x) {
    double acc = 0.0;
    int count = 0;
    for (std::size_t b = 0; b < pg.blocks.size(); ++b) {
        const BlockGeometry& g = pg.blocks[b];
        if (g.feasible == FeasibleSet::all_reals) continue;
        const int k = g.simplex_size();
        const int m = g.feasible == FeasibleSet::simplex ? 1 : g.num_simplices;
        for (int s = 0; s < m; ++s) {
            Vec row(x[b].begin() + static_cast<std::ptrdiff_t>(s) * k,
                    x[b].begin() + static_cast<std::ptrdiff_t>(s + 1) * k);
            acc += entropy_unchecked(row);
            ++count;
        }
    }
    return count == 0 ? -1.0 : acc / count;
}

int draw_output_index(const RunConfig& cfg) {
    if (cfg.output == IterateOutput::last_iterate) return cfg.T + 1;
    // x^(t) is kept with probability eta_t / sum eta_t; under a constant
    // schedule this is the uniform draw of Algorithm 1.
    double total = 0.0;
    for (int t = 1; t <= cfg.T; ++t) total += cfg.schedule.at(t);
    Rng out = Rng(cfg.seed).stream("output");
    const double u = out.next_double() * total;
    double cum = 0.0;
    for (int t = 1; t <= cfg.T; ++t) {
        cum += cfg.schedule.at(t);
        if (u < cum) return t;
    }
    return cfg.T;
}

}  // namespace

void StepSchedule::validate(int T) const {
    if (multipliers.empty()) return;
    if (static_cast<int>(multipliers.size()) != T)
        throw std::invalid_argument("StepSchedule: sequence length must equal T");
    double prev = multipliers[0];
    for (double m : multipliers) {
        if (!(m > 0.0)) throw std::invalid_argument("StepSchedule: multipliers must be positive");
        if (m > prev + 1e-15)
            throw std::invalid_argument("StepSchedule: sequence must be non-increasing");
        prev = m;
    }
}

RunConfig RunConfig::practice_mode(int T, std::uint64_t seed) {
    RunConfig c;
    c.T = T;
    c.selection = BlockSelection::cyclic;
    c.output = IterateOutput::last_iterate;
    c.seed = seed;
    return c;
}

RunConfig RunConfig::theory_mode(int T, std::uint64_t seed) {
    RunConfig c;
    c.T = T;
    c.selection = BlockSelection::uniform_random;
    c.output = IterateOutput::weighted_random;
    c.seed = seed;
    return c;
}

TheorySchedule theory_schedule(const RegularityConstants& c, double eps, int b) {
    c.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("theory_schedule: eps must be positive");
    if (b < 1) throw std::invalid_argument("theory_schedule: b must be >= 1");
    const double g2 = c.L2();
    TheorySchedule s;
    const double t_raw = 16.0 * c.gamma * c.F * g2 / (eps * eps);
    s.T = static_cast<long long>(std::ceil(t_raw - 1e-12));
    if (s.T < 1) s.T = 1;
    s.eta = std::sqrt(4.0 * c.F / (c.gamma * g2 * static_cast<double>(s.T)));
    s.oracle_call_budget = 8.0 * c.gamma * b * g2 * (c.F - c.f_star) / (eps * eps);
    return s;
}

double constant_step(const RegularityConstants& c, int b, long long T) {
    c.validate();
    if (b < 1 || T < 1) throw std::invalid_argument("constant_step: need b >= 1, T >= 1");
    return std::sqrt(2.0 * b * (c.F - c.f_star) / (c.gamma * c.L2() * static_cast<double>(T)));
}

RunRecord run_multi_block(const Objective& f, BlockPoint init, const RunConfig& cfg,
                          const std::vector<UpdateRule>& rules) {
    const auto t_start = std::chrono::steady_clock::now();
    const ProductGeometry& pg = f.geometry();
    const int b = pg.num_blocks();
    if (cfg.T < 1) throw std::invalid_argument("run_multi_block: T must be >= 1");
    if (static_cast<int>(rules.size()) != b)
        throw std::invalid_argument("run_multi_block: need one update rule per block");
    for (int i = 0; i < b; ++i) {
        rules[static_cast<std::size_t>(i)].validate();
        if (rules[static_cast<std::size_t>(i)].geometry.dim != pg.blocks[static_cast<std::size_t>(i)].dim)
            throw std::invalid_argument("run_multi_block: rule " + std::to_string(i) +
                                        " dimension does not match the objective block");
    }
    cfg.schedule.validate(cfg.T);
    check_dims(pg, init, "run_multi_block init");
    if (!product_feasible(pg, init))
        throw std::invalid_argument("run_multi_block: infeasible initialization");

    RunRecord rec;
    rec.seed = cfg.seed;
    for (int i = 0; i < b; ++i)
        rec.block_names.push_back(b == 2 ? (i == 0 ? "w" : "theta")
                                         : "block" + std::to_string(i));
    rec.config["T"] = cfg.T;
    rec.config["selection"] = cfg.selection == BlockSelection::cyclic ? "cyclic" : "uniform_random";
    rec.config["output"] =
        cfg.output == IterateOutput::last_iterate ? "last_iterate" : "weighted_random";
    rec.config["schedule"] = cfg.schedule.is_constant() ? "constant" : "sequence";
    rec.config["problem"] = f.name();
    rec.config["iteration_unit"] = "iteration";
    rec.config["entropy_log_base"] = "e";

    const bool track_entropy = mean_simplex_entropy(pg, init) >= 0.0;
    const int out_index = draw_output_index(cfg);

    Rng base(cfg.seed);
    Rng block_base = base.stream("block");
    Rng data_base = base.stream("data");
    Rng loss_base = base.stream("loss");

    BlockPoint x = std::move(init);
    if (cfg.keep_iterates) rec.trajectory.push_back(x);

    for (int t = 1; t <= cfg.T; ++t) {
        if (t == out_index) {
            rec.output_point = x;  // x^(t), the pre-update iterate
            rec.output_index = t;
        }
        int i;
        if (cfg.selection == BlockSelection::cyclic) {
            i = (t - 1) % b;
        } else {
            Rng pick = block_base.stream(static_cast<std::uint64_t>(t));
            i = static_cast<int>(pick.next_below(static_cast<std::size_t>(b)));
        }
        Rng grad_rng = data_base.stream(static_cast<std::uint64_t>(t));
        Vec g = f.block_stoch_grad(i, x, grad_rng);
        if (!all_finite(g))
            throw std::runtime_error("run_multi_block: non-finite gradient at iteration " +
                                     std::to_string(t));
        const double eta_t = rules[static_cast<std::size_t>(i)].eta * cfg.schedule.at(t);
        UpdateRule rule = rules[static_cast<std::size_t>(i)];
        rule.eta = eta_t;
        x[static_cast<std::size_t>(i)] = generic_mirror_step(x[static_cast<std::size_t>(i)], g, rule);

        Rng loss_rng = loss_base.stream(static_cast<std::uint64_t>(t));
        const double loss = f.loss_sample(x, loss_rng);
        if (!std::isfinite(loss))
            throw std::runtime_error("run_multi_block: non-finite loss at iteration " +
                                     std::to_string(t));

        rec.chosen_block.push_back(i);
        rec.loss.push_back(loss);
        rec.grad_dual_norm.push_back(dual_norm(pg.blocks[static_cast<std::size_t>(i)], g));
        rec.step_size.push_back(eta_t);
        if (track_entropy) rec.entropy.push_back(mean_simplex_entropy(pg, x));
        rec.iterate_hash.push_back(hash_point(x));
        if (cfg.keep_iterates) rec.trajectory.push_back(x);
    }

    if (out_index == cfg.T + 1) {
        rec.output_point = x;
        rec.output_index = cfg.T + 1;
    }
    rec.final_point = std::move(x);
    rec.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    rec.validate();
    return rec;
}

RunRecord run_two_block(const Objective& f, BlockPoint init, const RunConfig& cfg,
                        const std::array<UpdateRule, 2>& rules) {
    if (f.geometry().num_blocks() != 2)
        throw std::invalid_argument("run_two_block: objective must have exactly two blocks");
    return run_multi_block(f, std::move(init), cfg, {rules[0], rules[1]});
}

}  // namespace gaea
