#include "gaea/mirror.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaea {

namespace {

constexpr double kPositiveFloor = 1e-300;  // keeps EG iterates strictly positive
constexpr double kInnerClamp = 1e-15;      // interior guard for the inner solver

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Projection onto the rule's feasible set (identity / simplex / per-simplex).
Vec project_feasible(const BlockGeometry& g, const Vec& v) {
    switch (g.feasible) {
        case FeasibleSet::all_reals: return v;
        case FeasibleSet::simplex: return project_to_simplex(v);
        case FeasibleSet::simplex_product: {
            const int k = g.simplex_size();
            Vec out(v.size());
            for (int m = 0; m < g.num_simplices; ++m) {
                Vec part(v.begin() + static_cast<std::ptrdiff_t>(m) * k,
                         v.begin() + static_cast<std::ptrdiff_t>(m + 1) * k);
                Vec proj = project_to_simplex(part);
                for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(m) * k + i] = proj[i];
            }
            return out;
        }
    }
    return v;
}

// For entropic DGFs the subproblem gradient needs strictly positive entries;
// projections can land exactly on a face, so nudge inside and renormalize.
void clamp_interior(const BlockGeometry& g, Vec& u) {
    if (g.dgf_kind != DgfKind::negative_entropy) return;
    const int k = g.feasible == FeasibleSet::simplex ? g.dim : g.simplex_size();
    const int m = g.feasible == FeasibleSet::simplex ? 1 : g.num_simplices;
    for (int s = 0; s < m; ++s) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            double& v = u[static_cast<std::size_t>(s) * k + i];
            if (v < kInnerClamp) v = kInnerClamp;
            sum += v;
        }
        for (int i = 0; i < k; ++i) u[static_cast<std::size_t>(s) * k + i] /= sum;
    }
}

double subproblem_value(const BlockGeometry& g, const Vec& u, const Vec& x, const Vec& grad_phi_x,
                        const Vec& eg, double phi_x) {
    // F(u) = <eta g, u> + phi(u) - phi(x) - <grad phi(x), u - x>
    double val = dgf_value(g, u) - phi_x;
    for (std::size_t i = 0; i < u.size(); ++i) val += eg[i] * u[i] - grad_phi_x[i] * (u[i] - x[i]);
    return val;
}

// Projected-gradient solve of the prox subproblem with FISTA extrapolation.
// The step size only backtracks (never regrows): once the quadratic upper
// model holds at a step it holds globally for our DGFs, so after a few clean
// accepts the line search is frozen. This avoids the floating-point noise
// ball that value-based acceptance produces near the optimum. Adaptive
// restart (on value increase) keeps the momentum safe, and entropic
// condition numbers of order 1/min(u) are what the acceleration is for.
Vec inner_solve(const Vec& x, const Vec& g, const UpdateRule& rule) {
    const BlockGeometry& geom = rule.geometry;
    if (geom.dgf_kind == DgfKind::negative_entropy)
        for (double v : x)
            require(v > 0.0, "generic_mirror_step: entropic dgf needs strictly positive x");

    Vec eg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) eg[i] = rule.eta * g[i];
    const Vec grad_phi_x = dgf_grad(geom, x);
    const double phi_x = dgf_value(geom, x);
    const std::size_t n = x.size();

    auto grad_at = [&](const Vec& p) {
        Vec grad = dgf_grad(geom, p);
        for (std::size_t i = 0; i < n; ++i) grad[i] = (grad[i] - grad_phi_x[i]) + eg[i];
        return grad;
    };

    // The quadratic model is globally valid for the squared-Euclidean DGF,
    // so its line search can be frozen once settled; entropic curvature
    // grows toward the boundary and must keep backtracking.
    const bool global_model = geom.dgf_kind == DgfKind::squared_euclidean;

    Vec u = x;
    Vec y = x;
    bool y_is_u = true;
    double t_momentum = 1.0;
    double step = 1.0;
    double fu = subproblem_value(geom, u, x, grad_phi_x, eg, phi_x);
    int clean_accepts = 0;
    double res = 0.0;

    for (int iter = 0; iter < rule.max_inner_iters; ++iter) {
        // Unit-step prox-gradient mapping at u doubles as the residual.
        Vec grad_u = grad_at(u);
        Vec unit(n);
        for (std::size_t i = 0; i < n; ++i) unit[i] = u[i] - grad_u[i];
        unit = project_feasible(geom, unit);
        res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = u[i] - unit[i];
            res += d * d;
        }
        if (std::sqrt(res) <= rule.inner_tol) return u;

        // Transient boundary hits can spike the local entropic curvature and
        // collapse the step; let it regrow while one step's worth of model
        // decrease (res^2 * s / 2) still clears the floating-point noise of
        // the value test. Past that point the step stays monotone, which
        // keeps value-noise from re-expanding the iterates.
        if (!global_model && clean_accepts >= 10 &&
            0.5 * res * step > 1e-12 * (1.0 + std::fabs(fu))) {
            step = std::min(step * 2.0, 1.0);
            clean_accepts = 0;
        }

        const Vec grad_y = y_is_u ? grad_u : grad_at(y);
        Vec cand(n);
        if (global_model && clean_accepts >= 5) {
            for (std::size_t i = 0; i < n; ++i) cand[i] = y[i] - step * grad_y[i];
            cand = project_feasible(geom, cand);
        } else {
            const double fy = y_is_u ? fu : subproblem_value(geom, y, x, grad_phi_x, eg, phi_x);
            bool accepted = false;
            for (int bt = 0; bt < 200; ++bt) {
                for (std::size_t i = 0; i < n; ++i) cand[i] = y[i] - step * grad_y[i];
                cand = project_feasible(geom, cand);
                clamp_interior(geom, cand);
                double lin = 0.0, sq = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = cand[i] - y[i];
                    lin += grad_y[i] * d;
                    sq += d * d;
                }
                const double fc = subproblem_value(geom, cand, x, grad_phi_x, eg, phi_x);
                if (fc <= fy + lin + sq / (2.0 * step) + 1e-13 * (1.0 + std::fabs(fy))) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
                clean_accepts = 0;
            }
            if (!accepted)
                throw std::runtime_error(
                    "generic_mirror_step: line search failed at inner iteration " +
                    std::to_string(iter));
            ++clean_accepts;
        }

        const double fc = subproblem_value(geom, cand, x, grad_phi_x, eg, phi_x);
        if (fc > fu + 1e-13 * (1.0 + std::fabs(fu)) && !y_is_u) {
            // Momentum overshot: drop the candidate and restart from u. A
            // plain gradient step (y == u) is always accepted, which rules
            // out a zero-progress cycle.
            y = u;
            y_is_u = true;
            t_momentum = 1.0;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
        y.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = cand[i] + ((t_momentum - 1.0) / t_next) * (cand[i] - u[i]);
        y = project_feasible(geom, y);
        clamp_interior(geom, y);
        y_is_u = false;
        u = std::move(cand);
        fu = fc;
        t_momentum = t_next;
    }
    throw std::runtime_error("generic_mirror_step: no convergence within " +
                             std::to_string(rule.max_inner_iters) + " inner iterations, residual " +
                             std::to_string(std::sqrt(res)));
}

Vec eg_rows(const BlockGeometry& g, const Vec& theta, const Vec& grad, double eta) {
    if (g.feasible == FeasibleSet::simplex) return eg_step(theta, grad, eta);
    const int k = g.simplex_size();
    Vec out(theta.size());
    for (int m = 0; m < g.num_simplices; ++m) {
        Vec trow(theta.begin() + static_cast<std::ptrdiff_t>(m) * k,
                 theta.begin() + static_cast<std::ptrdiff_t>(m + 1) * k);
        Vec grow(grad.begin() + static_cast<std::ptrdiff_t>(m) * k,
                 grad.begin() + static_cast<std::ptrdiff_t>(m + 1) * k);
        Vec upd = eg_step(trow, grow, eta);
        for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(m) * k + i] = upd[i];
    }
    return out;
}

}  // namespace

UpdateRule UpdateRule::euclidean(int dim, double eta) {
    UpdateRule r{BlockGeometry::euclidean(dim), eta, UpdateMode::closed_form_euclidean};
    r.validate();
    return r;
}

UpdateRule UpdateRule::eg_simplex(int k, double eta) {
    UpdateRule r{BlockGeometry::simplex(k), eta, UpdateMode::closed_form_eg};
    r.validate();
    return r;
}

UpdateRule UpdateRule::eg_simplex_product(int m, int k, double eta) {
    UpdateRule r{BlockGeometry::simplex_product(m, k), eta, UpdateMode::closed_form_eg};
    r.validate();
    return r;
}

UpdateRule UpdateRule::projected_euclidean_simplex(int k, double eta) {
    UpdateRule r{BlockGeometry::euclidean_on_simplex(k), eta, UpdateMode::closed_form_euclidean};
    r.validate();
    return r;
}

UpdateRule UpdateRule::projected_euclidean_simplex_product(int m, int k, double eta) {
    UpdateRule r{BlockGeometry::euclidean_on_simplex_product(m, k), eta,
                 UpdateMode::closed_form_euclidean};
    r.validate();
    return r;
}

UpdateRule UpdateRule::generic(BlockGeometry g, double eta, double tol, int max_iters) {
    UpdateRule r{g, eta, UpdateMode::generic_inner_solve, tol, max_iters};
    r.validate();
    return r;
}

void UpdateRule::validate() const {
    require(eta > 0.0, "UpdateRule: eta must be positive");
    require(geometry.dim >= 1, "UpdateRule: geometry dimension must be >= 1");
    if (mode == UpdateMode::closed_form_euclidean)
        require(geometry.dgf_kind == DgfKind::squared_euclidean,
                "UpdateRule: closed-form Euclidean mode needs the squared-Euclidean dgf");
    if (mode == UpdateMode::closed_form_eg)
        require(geometry.dgf_kind == DgfKind::negative_entropy &&
                    geometry.feasible != FeasibleSet::all_reals,
                "UpdateRule: closed-form EG mode needs the entropic dgf on simplices");
    if (mode == UpdateMode::generic_inner_solve)
        require(inner_tol > 0.0 && max_inner_iters >= 1,
                "UpdateRule: inner solve needs positive tolerance and iteration cap");
}

Vec euclidean_step(const Vec& x, const Vec& g, double eta) {
    if (x.size() != g.size()) throw std::invalid_argument("euclidean_step: length mismatch");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - eta * g[i];
    return out;
}

Vec eg_step(const Vec& theta, const Vec& g, double eta) {
    if (theta.size() != g.size()) throw std::invalid_argument("eg_step: length mismatch");
    if (theta.empty()) throw std::invalid_argument("eg_step: empty input");
    const std::size_t n = theta.size();
    Vec logits(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(theta[i] > 0.0))
            throw std::invalid_argument("eg_step: theta must be strictly positive (entry " +
                                        std::to_string(i) + ")");
        if (!std::isfinite(g[i]))
            throw std::invalid_argument("eg_step: non-finite gradient entry " + std::to_string(i));
        logits[i] = std::log(theta[i]) - eta * g[i];
    }
    double m = logits[0];
    for (double v : logits) m = std::max(m, v);
    Vec out(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::max(std::exp(logits[i] - m), kPositiveFloor);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

Vec generic_mirror_step(const Vec& x, const Vec& g, const UpdateRule& rule) {
    rule.validate();
    require(static_cast<int>(x.size()) == rule.geometry.dim,
            "generic_mirror_step: dimension mismatch");
    if (x.size() != g.size()) throw std::invalid_argument("generic_mirror_step: length mismatch");
    switch (rule.mode) {
        case UpdateMode::closed_form_euclidean: {
            Vec out = euclidean_step(x, g, rule.eta);
            if (rule.geometry.feasible != FeasibleSet::all_reals)
                out = project_feasible(rule.geometry, out);
            return out;
        }
        case UpdateMode::closed_form_eg:
            return eg_rows(rule.geometry, x, g, rule.eta);
        case UpdateMode::generic_inner_solve:
            return inner_solve(x, g, rule);
    }
    throw std::logic_error("generic_mirror_step: unknown mode");
}

ArchParams product_eg_step(const ArchParams& theta, const Matrix& grad, double eta) {
    if (theta.chart != ParamChart::direct_simplex)
        throw std::invalid_argument("product_eg_step: theta must be in the direct-simplex chart");
    if (grad.rows != theta.num_edges() || grad.cols != theta.num_ops())
        throw std::invalid_argument("product_eg_step: gradient shape mismatch");
    ArchParams out = theta;
    for (int e = 0; e < theta.num_edges(); ++e)
        out.values.set_row(e, eg_step(theta.values.row(e), grad.row(e), eta));
    return out;
}

}  // namespace gaea
