#include "gaea/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gaea {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double simplex_sum_check(const Vec& x, int begin, int end, double tol) {
    double s = 0.0;
    for (int i = begin; i < end; ++i) {
        if (x[static_cast<std::size_t>(i)] < -tol) return -1.0;
        s += x[static_cast<std::size_t>(i)];
    }
    return std::fabs(s - 1.0) <= tol ? s : -1.0;
}

}  // namespace

int BlockGeometry::simplex_size() const {
    switch (feasible) {
        case FeasibleSet::simplex: return dim;
        case FeasibleSet::simplex_product: return dim / num_simplices;
        default: return 0;
    }
}

BlockGeometry BlockGeometry::euclidean(int dim) {
    require(dim >= 1, "BlockGeometry::euclidean: dim must be >= 1");
    return {dim, NormKind::euclidean, DgfKind::squared_euclidean, FeasibleSet::all_reals, 1};
}

BlockGeometry BlockGeometry::simplex(int k) {
    require(k >= 2, "BlockGeometry::simplex: k must be >= 2");
    return {k, NormKind::l1, DgfKind::negative_entropy, FeasibleSet::simplex, 1};
}

BlockGeometry BlockGeometry::simplex_product(int m, int k) {
    require(m >= 1 && k >= 2, "BlockGeometry::simplex_product: need m >= 1, k >= 2");
    return {m * k, NormKind::scaled_l1, DgfKind::negative_entropy, FeasibleSet::simplex_product, m};
}

BlockGeometry BlockGeometry::euclidean_on_simplex(int k) {
    require(k >= 2, "BlockGeometry::euclidean_on_simplex: k must be >= 2");
    return {k, NormKind::euclidean, DgfKind::squared_euclidean, FeasibleSet::simplex, 1};
}

BlockGeometry BlockGeometry::euclidean_on_simplex_product(int m, int k) {
    require(m >= 1 && k >= 2, "BlockGeometry::euclidean_on_simplex_product: need m >= 1, k >= 2");
    return {m * k, NormKind::euclidean, DgfKind::squared_euclidean, FeasibleSet::simplex_product, m};
}

std::string BlockGeometry::describe() const {
    std::string n = norm_kind == NormKind::euclidean ? "l2"
                    : norm_kind == NormKind::l1      ? "l1"
                                                     : "l1/sqrt(m)";
    std::string d = dgf_kind == DgfKind::squared_euclidean ? "sq-euclidean" : "neg-entropy";
    std::string f = feasible == FeasibleSet::all_reals ? "R^n"
                    : feasible == FeasibleSet::simplex ? "simplex"
                                                       : "simplex-product";
    return "dim=" + std::to_string(dim) + " norm=" + n + " dgf=" + d + " set=" + f;
}

double norm(const BlockGeometry& g, const Vec& x) {
    require(static_cast<int>(x.size()) == g.dim, "norm: dimension mismatch");
    switch (g.norm_kind) {
        case NormKind::euclidean: return l2_norm(x);
        case NormKind::l1: return l1_norm(x);
        case NormKind::scaled_l1: return l1_norm(x) / std::sqrt(static_cast<double>(g.num_simplices));
    }
    return 0.0;
}

double dual_norm(const BlockGeometry& g, const Vec& x) {
    require(static_cast<int>(x.size()) == g.dim, "dual_norm: dimension mismatch");
    switch (g.norm_kind) {
        case NormKind::euclidean: return l2_norm(x);
        case NormKind::l1: return linf_norm(x);
        case NormKind::scaled_l1: return std::sqrt(static_cast<double>(g.num_simplices)) * linf_norm(x);
    }
    return 0.0;
}

double dgf_value(const BlockGeometry& g, const Vec& x) {
    require(static_cast<int>(x.size()) == g.dim, "dgf_value: dimension mismatch");
    if (g.dgf_kind == DgfKind::squared_euclidean) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return 0.5 * s;
    }
    // negative entropy; 0 log 0 = 0
    double s = 0.0;
    for (double v : x) {
        if (v < 0.0) throw std::invalid_argument("dgf_value: negative entry under entropic dgf");
        if (v > 0.0) s += v * std::log(v);
    }
    return s;
}

Vec dgf_grad(const BlockGeometry& g, const Vec& x) {
    require(static_cast<int>(x.size()) == g.dim, "dgf_grad: dimension mismatch");
    Vec out(x.size());
    if (g.dgf_kind == DgfKind::squared_euclidean) {
        out = x;
        return out;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0))
            throw std::invalid_argument("dgf_grad: entropic dgf needs strictly positive entries");
        out[i] = 1.0 + std::log(x[i]);
    }
    return out;
}

double bregman(const BlockGeometry& g, const Vec& u, const Vec& v) {
    require(u.size() == v.size() && static_cast<int>(u.size()) == g.dim,
            "bregman: dimension mismatch");
    if (g.dgf_kind == DgfKind::squared_euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double d = u[i] - v[i];
            s += d * d;
        }
        return 0.5 * s;
    }
    // Generalized KL: sum u log(u/v) - sum u + sum v. On simplices the linear
    // terms cancel and this is KL(u||v).
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0.0) throw std::invalid_argument("bregman: negative entry in u");
        if (!(v[i] > 0.0))
            throw std::invalid_argument("bregman: entropic dgf needs v strictly positive (entry " +
                                        std::to_string(i) + ")");
        if (u[i] > 0.0) s += u[i] * std::log(u[i] / v[i]);
        s += v[i] - u[i];
    }
    return s;
}

bool is_feasible(const BlockGeometry& g, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != g.dim) return false;
    if (!all_finite(x)) return false;
    switch (g.feasible) {
        case FeasibleSet::all_reals: return true;
        case FeasibleSet::simplex: return simplex_sum_check(x, 0, g.dim, tol) > 0.0;
        case FeasibleSet::simplex_product: {
            const int k = g.simplex_size();
            for (int m = 0; m < g.num_simplices; ++m)
                if (simplex_sum_check(x, m * k, (m + 1) * k, tol) < 0.0) return false;
            return true;
        }
    }
    return false;
}

Vec simplex_check_and_renormalize(const Vec& x, double tol) {
    Vec out = x;
    double sum = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < -tol)
            throw std::invalid_argument("simplex_check_and_renormalize: negative entry " +
                                        std::to_string(out[i]) + " at index " + std::to_string(i));
        if (out[i] < 0.0) out[i] = 0.0;
        sum += out[i];
    }
    if (!(sum > 0.0))
        throw std::invalid_argument("simplex_check_and_renormalize: input sums to zero");
    for (double& v : out) v /= sum;
    return out;
}

double entropy_unchecked(const Vec& x) {
    double h = 0.0;
    for (double v : x)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double entropy(const Vec& x) {
    if (simplex_sum_check(x, 0, static_cast<int>(x.size()), 1e-9) < 0.0)
        throw std::invalid_argument("entropy: input is not on the simplex");
    return entropy_unchecked(x);
}

Vec project_to_simplex(const Vec& x) {
    // Sort-and-threshold: find tau with sum max(x_i - tau, 0) = 1.
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("project_to_simplex: empty input");
    Vec sorted = x;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumsum = 0.0;
    double tau = 0.0;
    int support = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cumsum += sorted[i];
        const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - t > 0.0) {
            tau = t;
            support = static_cast<int>(i + 1);
        }
    }
    (void)support;
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(x[i] - tau, 0.0);
    return out;
}

int ProductGeometry::total_dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.dim;
    return d;
}

void check_dims(const ProductGeometry& pg, const BlockPoint& x, const char* what) {
    if (x.size() != pg.blocks.size())
        throw std::invalid_argument(std::string(what) + ": block count mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (static_cast<int>(x[i].size()) != pg.blocks[i].dim)
            throw std::invalid_argument(std::string(what) + ": block " + std::to_string(i) +
                                        " dimension mismatch");
}

double product_norm(const ProductGeometry& pg, const BlockPoint& x) {
    check_dims(pg, x, "product_norm");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ni = norm(pg.blocks[i], x[i]);
        s += ni * ni;
    }
    return std::sqrt(s);
}

double product_dual_norm(const ProductGeometry& pg, const BlockPoint& x) {
    check_dims(pg, x, "product_dual_norm");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ni = dual_norm(pg.blocks[i], x[i]);
        s += ni * ni;
    }
    return std::sqrt(s);
}

double product_dgf(const ProductGeometry& pg, const BlockPoint& x) {
    check_dims(pg, x, "product_dgf");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += dgf_value(pg.blocks[i], x[i]);
    return s;
}

double product_bregman(const ProductGeometry& pg, const BlockPoint& u, const BlockPoint& v) {
    check_dims(pg, u, "product_bregman");
    check_dims(pg, v, "product_bregman");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += bregman(pg.blocks[i], u[i], v[i]);
    return s;
}

bool product_feasible(const ProductGeometry& pg, const BlockPoint& x, double tol) {
    if (x.size() != pg.blocks.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_feasible(pg.blocks[i], x[i], tol)) return false;
    return true;
}

std::uint64_t hash_point(const BlockPoint& x) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& b : x) h = hash_vec(b, h);
    return h;
}

}  // namespace gaea
