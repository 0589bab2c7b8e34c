// Norms, dual norms, distance-generating functions, Bregman divergences, and
// simplex primitives. A BlockGeometry pins down one block's (norm, DGF,
// feasible set) triple; a ProductGeometry composes blocks so that
// ||x||^2 = sum_i ||x_i||_i^2 and phi(x) = sum_i phi_i(x_i).
#pragma once

#include "gaea/numerics.hpp"

#include <string>
#include <vector>

namespace gaea {

enum class NormKind {
    euclidean,  // l2
    l1,         // l1, dual linf
    scaled_l1,  // ||.||_1 / sqrt(m) over m simplices, dual sqrt(m) * ||.||_inf
};

enum class DgfKind {
    squared_euclidean,  // phi(u) = 1/2 ||u||_2^2
    negative_entropy,   // phi(u) = sum u_i log u_i, with 0 log 0 = 0
};

enum class FeasibleSet {
    all_reals,
    simplex,          // one probability simplex over all coordinates
    simplex_product,  // m simplices of equal size, concatenated
};

struct BlockGeometry {
    int dim = 0;
    NormKind norm_kind = NormKind::euclidean;
    DgfKind dgf_kind = DgfKind::squared_euclidean;
    FeasibleSet feasible = FeasibleSet::all_reals;
    int num_simplices = 1;  // m; meaningful for simplex_product

    int simplex_size() const;

    /// Unconstrained block with the l2 norm and squared-Euclidean DGF.
    static BlockGeometry euclidean(int dim);
    /// One k-simplex with the l1 norm and negative-entropy DGF.
    static BlockGeometry simplex(int k);
    /// m simplices of size k with the norm ||.||_1 / sqrt(m) and entropic DGF.
    static BlockGeometry simplex_product(int m, int k);
    /// Euclidean geometry constrained to one simplex (projected-GD baseline).
    static BlockGeometry euclidean_on_simplex(int k);
    /// Euclidean geometry on m simplices of size k.
    static BlockGeometry euclidean_on_simplex_product(int m, int k);

    std::string describe() const;
};

double norm(const BlockGeometry& g, const Vec& x);
double dual_norm(const BlockGeometry& g, const Vec& x);

/// phi(x). Entropic case uses the 0 log 0 = 0 convention; throws on
/// infeasible x (negative entries for entropic geometry).
double dgf_value(const BlockGeometry& g, const Vec& x);

/// Gradient of phi. Entropic case requires strictly positive x.
Vec dgf_grad(const BlockGeometry& g, const Vec& x);

/// D_phi(u||v) = phi(u) - phi(v) - <grad phi(v), u - v>. Equals 1/2||u-v||_2^2
/// for the squared-Euclidean DGF and the (generalized) KL divergence for the
/// entropic DGF; on the simplex the latter is exactly KL(u||v). v must be
/// strictly positive in the entropic case.
double bregman(const BlockGeometry& g, const Vec& u, const Vec& v);

bool is_feasible(const BlockGeometry& g, const Vec& x, double tol = 1e-9);

/// Checks entries are >= -tol (clamping [-tol, 0) to zero), rejects all-zero
/// or more-negative input, and returns x / sum(x).
Vec simplex_check_and_renormalize(const Vec& x, double tol);

/// Shannon entropy -sum x_i log x_i (natural log, 0 log 0 = 0) of a simplex
/// point. Throws if x is not on the simplex within 1e-9.
double entropy(const Vec& x);
/// Entropy without the feasibility check, for inner loops on known-good rows.
double entropy_unchecked(const Vec& x);

/// Exact Euclidean projection onto the unit simplex (sort-and-threshold).
Vec project_to_simplex(const Vec& x);

struct ProductGeometry {
    std::vector<BlockGeometry> blocks;

    ProductGeometry() = default;
    explicit ProductGeometry(std::vector<BlockGeometry> b) : blocks(std::move(b)) {}

    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int total_dim() const;
};

/// A point with one Vec per block of a ProductGeometry.
using BlockPoint = std::vector<Vec>;

void check_dims(const ProductGeometry& pg, const BlockPoint& x, const char* what);

double product_norm(const ProductGeometry& pg, const BlockPoint& x);
double product_dual_norm(const ProductGeometry& pg, const BlockPoint& x);
double product_dgf(const ProductGeometry& pg, const BlockPoint& x);
double product_bregman(const ProductGeometry& pg, const BlockPoint& u, const BlockPoint& v);
bool product_feasible(const ProductGeometry& pg, const BlockPoint& x, double tol = 1e-9);

std::uint64_t hash_point(const BlockPoint& x);

}  // namespace gaea
