// Single-block update rules: the Euclidean gradient step, the exponentiated
// gradient step on the simplex, and a generic prox-based mirror step
//     argmin_u  eta <g, u> + D_phi(u || x)
// solved in closed form where one exists and by an inner projected-gradient
// solve otherwise.
#pragma once

#include "gaea/arch_params.hpp"
#include "gaea/geometry.hpp"

namespace gaea {

enum class UpdateMode {
    closed_form_euclidean,  // x - eta g, projected when the set is a simplex
    closed_form_eg,         // multiplicative update + per-simplex normalization
    generic_inner_solve,    // projected gradient on the prox subproblem
};

struct UpdateRule {
    BlockGeometry geometry;
    double eta = 0.1;
    UpdateMode mode = UpdateMode::closed_form_euclidean;
    double inner_tol = 1e-10;
    int max_inner_iters = 200000;

    static UpdateRule euclidean(int dim, double eta);
    static UpdateRule eg_simplex(int k, double eta);
    static UpdateRule eg_simplex_product(int m, int k, double eta);
    static UpdateRule projected_euclidean_simplex(int k, double eta);
    static UpdateRule projected_euclidean_simplex_product(int m, int k, double eta);
    static UpdateRule generic(BlockGeometry g, double eta, double tol = 1e-10,
                              int max_iters = 200000);

    /// Throws when a closed-form mode is paired with a geometry it does not
    /// solve (e.g. EG with a squared-Euclidean DGF).
    void validate() const;
};

/// x - eta g.
Vec euclidean_step(const Vec& x, const Vec& g, double eta);

/// theta * exp(-eta g), renormalized over one simplex. Computed in log space
/// (log theta_i - eta g_i, subtract max, exponentiate, normalize) so that
/// eta * ||g||_inf far beyond exp overflow is safe; the result is strictly
/// positive and sums to 1. theta must be strictly positive; g finite.
Vec eg_step(const Vec& theta, const Vec& g, double eta);

/// One mirror step under rule. Closed-form modes dispatch to the formulas
/// above; generic_inner_solve runs projected gradient on
/// F(u) = eta <g,u> + D_phi(u||x) until the unit-step prox-gradient residual
/// ||u - P(u - grad F(u))||_2 falls below rule.inner_tol. Throws on
/// non-convergence within rule.max_inner_iters.
Vec generic_mirror_step(const Vec& x, const Vec& g, const UpdateRule& rule);

/// EG applied independently to each edge row of theta (direct chart).
ArchParams product_eg_step(const ArchParams& theta, const Matrix& grad, double eta);

}  // namespace gaea
