// Benchmark objectives with known structure: a block-differentiable Objective
// interface with stochastic gradient oracles and declared regularity
// constants, plus the two synthetic test problems (a linear function on the
// simplex and a relatively-weakly-convex quadratic-plus-cosines instance) and
// the score-function (REINFORCE) gradient estimator.
#pragma once

#include "gaea/arch_params.hpp"
#include "gaea/geometry.hpp"
#include "gaea/numerics.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gaea {

/// Regularity constants of an objective: weak-convexity modulus gamma,
/// per-block second-moment gradient bounds, the objective value F at the
/// initialization, and a known lower bound f_star. The aggregate bound is
/// L^2 = sum_i G_i^2.
struct RegularityConstants {
    double gamma = 0.0;
    Vec block_G;  // one bound per block; two-block order is (w, theta)
    double F = 0.0;
    double f_star = 0.0;

    double G_w() const { return block_G.at(0); }
    double G_theta() const { return block_G.at(1); }
    double L2() const {
        double s = 0.0;
        for (double g : block_G) s += g * g;
        return s;
    }
    void validate() const;
};

class Objective {
  public:
    virtual ~Objective() = default;

    virtual std::string name() const = 0;
    virtual const ProductGeometry& geometry() const = 0;

    /// Deterministic full objective value.
    virtual double value(const BlockPoint& x) const = 0;
    /// Deterministic full gradient of one block.
    virtual Vec block_grad(int block, const BlockPoint& x) const = 0;
    /// Unbiased stochastic gradient of one block. Default: the full gradient.
    virtual Vec block_stoch_grad(int block, const BlockPoint& x, Rng& rng) const;
    /// Sampled loss used for trajectory records. Default: the full value.
    virtual double loss_sample(const BlockPoint& x, Rng& rng) const;

    virtual RegularityConstants constants() const = 0;
    /// Starting point; deterministic problems ignore rng.
    virtual BlockPoint initial_point(Rng& rng) const = 0;
};

/// f(theta) = <c, theta> on the k-simplex. Optimum is min_i c_i at a vertex.
class SimplexLinear final : public Objective {
  public:
    SimplexLinear(int k, Vec cost);

    std::string name() const override { return "simplex_linear"; }
    const ProductGeometry& geometry() const override { return geom_; }
    double value(const BlockPoint& x) const override;
    Vec block_grad(int block, const BlockPoint& x) const override;
    RegularityConstants constants() const override;
    BlockPoint initial_point(Rng& rng) const override;

    const Vec& cost() const { return cost_; }
    double optimum() const;  // min_i c_i
    /// Exhaustive vertex scan; equals optimum() for this problem family.
    double optimum_by_vertex_enumeration() const;

  private:
    ProductGeometry geom_;
    Vec cost_;
};

struct RwcOptions {
    double noise_std = 0.5;     // additive Gaussian on stochastic gradients
    double theta_curv = 1.0;    // curvature of the theta-block quadratic
    double huber_delta = 1.0;   // pseudo-Huber scale for the w block
    double cosine_scale = 1.0;  // 0 switches the nonconvex perturbation off
};

/// f(w, theta) = pseudo-Huber(w) + (a/2)||theta - c||^2
///             + A * sum_j (1 + cos(omega w_j + phi_j))
///             + A * sum_j (1 + cos(omega theta_j + psi_j))
/// with theta on a product of simplices of size 3 and A = gamma / omega^2,
/// so both block restrictions are gamma-relatively-weakly-convex w.r.t.
/// their DGFs by construction. f >= 0 everywhere, so f_star = 0 is an
/// analytic lower bound.
class RwcBenchmark final : public Objective {
  public:
    RwcBenchmark(int n_w, int n_theta, double gamma, std::uint64_t seed,
                 RwcOptions opts = {});

    std::string name() const override { return "rwc_benchmark"; }
    const ProductGeometry& geometry() const override { return geom_; }
    double value(const BlockPoint& x) const override;
    Vec block_grad(int block, const BlockPoint& x) const override;
    Vec block_stoch_grad(int block, const BlockPoint& x, Rng& rng) const override;
    RegularityConstants constants() const override;
    BlockPoint initial_point(Rng& rng) const override;

    double gamma() const { return gamma_; }
    double cosine_amplitude() const { return amplitude_; }
    double cosine_frequency() const { return omega_; }
    const RwcOptions& options() const { return opts_; }

  private:
    ProductGeometry geom_;
    int n_w_, n_theta_;
    double gamma_;
    double omega_;
    double amplitude_;
    RwcOptions opts_;
    Vec phase_w_, phase_theta_, theta_center_;
};

/// Empirical mean of ||stochastic gradient||_{block,*}^2 over draws at x.
double measure_block_g_squared(const Objective& f, const BlockPoint& x, int block, int draws,
                               Rng& rng);

/// REINFORCE-style estimator for d/d theta of E_{a ~ p_theta} E[L(a)]: sample
/// one discrete operation per edge row, weight the observed loss by the
/// score 1/theta[e][a_e] at the chosen entry. Unbiased for the expected-loss
/// relaxation. discrete_loss receives the per-edge choices and may consume
/// randomness (e.g. a minibatch draw).
Matrix score_function_gradient(
    const ArchParams& theta, int samples,
    const std::function<double(const std::vector<int>&, Rng&)>& discrete_loss, Rng& rng);

/// Problem registry used by the CLI. Knows the built-in synthetic problems;
/// supernet search tasks are dispatched separately by the harness.
std::vector<std::string> problem_names();
std::unique_ptr<Objective> make_problem(const std::string& name, const nlohmann::json& params);

}  // namespace gaea
