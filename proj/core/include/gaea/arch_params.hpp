// Per-edge simplex-constrained operation weights. Each row of the |E| x |O|
// matrix lives on the |O|-simplex. The chart tag records whether stored
// values are the simplex weights themselves or logits mapped through a
// row-wise softmax.
#pragma once

#include "gaea/numerics.hpp"

namespace gaea {

enum class ParamChart {
    direct_simplex,  // values are mixture weights, rows on the simplex
    softmax_logits,  // values are logits; weights = softmax(row)
};

struct ArchParams {
    Matrix values;  // |E| x |O|
    ParamChart chart = ParamChart::direct_simplex;

    int num_edges() const { return values.rows; }
    int num_ops() const { return values.cols; }

    /// Uniform direct-simplex parameters (every row 1/|O|).
    static ArchParams uniform(int num_edges, int num_ops);
    /// All-zero logits (softmax gives uniform rows).
    static ArchParams zero_logits(int num_edges, int num_ops);

    /// Mixture weights as an |E| x |O| matrix, rows on the simplex. Identity
    /// for the direct chart; row-wise softmax for the logits chart.
    Matrix mixture_weights() const;

    /// Mean per-edge entropy of the mixture weights (natural log).
    double mean_edge_entropy() const;

    /// Throws unless every direct-chart row is strictly positive and sums to
    /// one within tol.
    void check_simplex_rows(double tol = 1e-9) const;
};

/// Row-wise softmax (max-subtracted).
Vec softmax(const Vec& z);

}  // namespace gaea
