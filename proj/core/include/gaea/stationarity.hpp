// Bregman proximal operator and Bregman stationarity:
//   prox_l(x)  = argmin_u  l f(u) + D(u || x)
//   Delta_l(x) = [ D(x || prox_l(x)) + D(prox_l(x) || x) ] / l^2
// where D is the Bregman divergence of the product DGF. This is the
// convergence yardstick; it is measured offline on recorded iterates and is
// never part of the optimization loop.
#pragma once

#include "gaea/problems.hpp"

namespace gaea {

struct ProxConfig {
    double lambda = 0.0;  // must satisfy lambda * gamma < 1
    int max_iters = 0;    // 0 means 10 * total dimension
    double tol = 1e-8;    // first-order residual target

    /// The standard measurement scale lambda = 1 / (2 gamma).
    static ProxConfig for_gamma(double gamma);
};

/// Deterministic full-gradient mirror descent on the prox subproblem; stops
/// when the unit-step mirror-mapping residual is <= cfg.tol. Throws on
/// non-convergence (reporting the residual) or when lambda * gamma >= 1.
BlockPoint bregman_prox(const Objective& f, const BlockPoint& x, const ProxConfig& cfg);

/// Delta_lambda(x) >= 0; zero exactly when x is a fixed point of the prox.
double bregman_stationarity(const Objective& f, const BlockPoint& x, const ProxConfig& cfg);

}  // namespace gaea
