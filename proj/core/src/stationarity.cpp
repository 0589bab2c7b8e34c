#include "gaea/stationarity.hpp"

#include "gaea/mirror.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaea {

namespace {

// Gradient of P(u) = lambda f(u) + D(u||x) for one block.
Vec subgrad_block(const Objective& f, const BlockGeometry& g, const BlockPoint& u,
                  const BlockPoint& x, int i, double lambda) {
    Vec grad = f.block_grad(i, u);
    const Vec phi_u = dgf_grad(g, u[static_cast<std::size_t>(i)]);
    const Vec phi_x = dgf_grad(g, x[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < grad.size(); ++j)
        grad[j] = lambda * grad[j] + phi_u[j] - phi_x[j];
    return grad;
}

double prox_objective(const Objective& f, const BlockPoint& u, const BlockPoint& x,
                      double lambda) {
    return lambda * f.value(u) + product_bregman(f.geometry(), u, x);
}

// One mirror step of size s on every block; closed-form per geometry.
BlockPoint mirror_all_blocks(const ProductGeometry& pg, const BlockPoint& u,
                             const std::vector<Vec>& grads, double s) {
    BlockPoint next(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const BlockGeometry& g = pg.blocks[i];
        UpdateRule rule{g, s,
                        g.dgf_kind == DgfKind::negative_entropy ? UpdateMode::closed_form_eg
                                                                : UpdateMode::closed_form_euclidean};
        next[i] = generic_mirror_step(u[i], grads[i], rule);
    }
    return next;
}

}  // namespace

ProxConfig ProxConfig::for_gamma(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("ProxConfig::for_gamma: gamma must be positive");
    ProxConfig c;
    c.lambda = 1.0 / (2.0 * gamma);
    return c;
}

BlockPoint bregman_prox(const Objective& f, const BlockPoint& x, const ProxConfig& cfg) {
    const ProductGeometry& pg = f.geometry();
    check_dims(pg, x, "bregman_prox");
    if (!product_feasible(pg, x)) throw std::invalid_argument("bregman_prox: infeasible x");
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("bregman_prox: lambda must be positive");
    const double gamma = f.constants().gamma;
    if (cfg.lambda * gamma >= 1.0)
        throw std::invalid_argument("bregman_prox: lambda * gamma must be < 1 (got " +
                                    std::to_string(cfg.lambda * gamma) + ")");
    // Default cap is 10x the total dimension, floored so that tiny problems
    // still get enough mirror steps to reach the residual target.
    const int max_iters =
        cfg.max_iters > 0 ? cfg.max_iters : std::max(500, 10 * pg.total_dim());

    const int b = pg.num_blocks();
    BlockPoint u = x;
    double step = 1.0;
    double pu = prox_objective(f, u, x, cfg.lambda);
    double residual = 0.0;
    int clean_accepts = 0;

    for (int iter = 0; iter < max_iters; ++iter) {
        std::vector<Vec> grads(static_cast<std::size_t>(b));
        for (int i = 0; i < b; ++i)
            grads[static_cast<std::size_t>(i)] = subgrad_block(f, pg.blocks[static_cast<std::size_t>(i)], u, x, i, cfg.lambda);

        // Unit-step mirror mapping as the first-order residual.
        BlockPoint unit = mirror_all_blocks(pg, u, grads, 1.0);
        BlockPoint diff(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            diff[i] = u[i];
            add_scaled(diff[i], -1.0, unit[i]);
        }
        residual = product_norm(pg, diff);
        if (residual <= cfg.tol) return u;

        // Backtracking mirror descent on the Bregman model
        //   P(u+) <= P(u) + <grad, u+ - u> + D(u+||u)/s.
        // The step only shrinks; once it has been accepted several times in
        // a row the model holds globally (relative smoothness), so the value
        // test is frozen and the fixed-step contraction runs to tolerance.
        if (clean_accepts >= 5) {
            BlockPoint cand = mirror_all_blocks(pg, u, grads, step);
            pu = prox_objective(f, cand, x, cfg.lambda);
            u = std::move(cand);
            continue;
        }
        bool accepted = false;
        for (int bt = 0; bt < 200; ++bt) {
            BlockPoint cand = mirror_all_blocks(pg, u, grads, step);
            double lin = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = 0; j < u[i].size(); ++j)
                    lin += grads[i][j] * (cand[i][j] - u[i][j]);
            const double breg = product_bregman(pg, cand, u);
            const double pc = prox_objective(f, cand, x, cfg.lambda);
            if (pc <= pu + lin + breg / step + 1e-13 * (1.0 + std::fabs(pu))) {
                u = std::move(cand);
                pu = pc;
                ++clean_accepts;
                accepted = true;
                break;
            }
            step *= 0.5;
            clean_accepts = 0;
        }
        if (!accepted)
            throw std::runtime_error("bregman_prox: line search stalled, residual " +
                                     std::to_string(residual));
    }
    throw std::runtime_error("bregman_prox: no convergence within " + std::to_string(max_iters) +
                             " iterations, residual " + std::to_string(residual));
}

double bregman_stationarity(const Objective& f, const BlockPoint& x, const ProxConfig& cfg) {
    const BlockPoint p = bregman_prox(f, x, cfg);
    const ProductGeometry& pg = f.geometry();
    const double forward = product_bregman(pg, x, p);
    const double backward = product_bregman(pg, p, x);
    return (forward + backward) / (cfg.lambda * cfg.lambda);
}

}  // namespace gaea
