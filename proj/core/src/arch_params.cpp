#include "gaea/arch_params.hpp"

#include "gaea/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gaea {

ArchParams ArchParams::uniform(int num_edges, int num_ops) {
    ArchParams p;
    p.values = Matrix(num_edges, num_ops, 1.0 / static_cast<double>(num_ops));
    p.chart = ParamChart::direct_simplex;
    return p;
}

ArchParams ArchParams::zero_logits(int num_edges, int num_ops) {
    ArchParams p;
    p.values = Matrix(num_edges, num_ops, 0.0);
    p.chart = ParamChart::softmax_logits;
    return p;
}

Vec softmax(const Vec& z) {
    double m = z[0];
    for (double v : z) m = std::max(m, v);
    Vec out(z.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = std::exp(z[i] - m);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

Matrix ArchParams::mixture_weights() const {
    if (chart == ParamChart::direct_simplex) return values;
    Matrix w(values.rows, values.cols);
    for (int e = 0; e < values.rows; ++e) w.set_row(e, softmax(values.row(e)));
    return w;
}

double ArchParams::mean_edge_entropy() const {
    const Matrix w = mixture_weights();
    double h = 0.0;
    for (int e = 0; e < w.rows; ++e) h += entropy_unchecked(w.row(e));
    return h / static_cast<double>(w.rows);
}

void ArchParams::check_simplex_rows(double tol) const {
    if (chart != ParamChart::direct_simplex)
        throw std::invalid_argument("check_simplex_rows: params are in the logits chart");
    for (int e = 0; e < values.rows; ++e) {
        double s = 0.0;
        for (int o = 0; o < values.cols; ++o) {
            const double v = values.at(e, o);
            if (!(v > 0.0))
                throw std::invalid_argument("ArchParams: row " + std::to_string(e) +
                                            " has a non-positive entry");
            s += v;
        }
        if (std::fabs(s - 1.0) > tol)
            throw std::invalid_argument("ArchParams: row " + std::to_string(e) +
                                        " sums to " + std::to_string(s));
    }
}

}  // namespace gaea
