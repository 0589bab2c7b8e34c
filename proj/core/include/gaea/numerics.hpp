// Dense vector/matrix helpers, seeded randomness, and finite differences.
// Everything downstream builds on these; all arithmetic is double precision.
#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace gaea {

using Vec = std::vector<double>;

/// Minimal row-major matrix. Used for per-edge operation weights and batches.
struct Matrix {
    int rows = 0;
    int cols = 0;
    Vec data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    Vec row(int r) const {
        return Vec(data.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                   data.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols);
    }
    void set_row(int r, const Vec& v) {
        for (int c = 0; c < cols; ++c) at(r, c) = v[static_cast<std::size_t>(c)];
    }
};

/// Splittable counter-based random stream.
///
/// Draws are a keyed SplitMix64 hash of (key, counter), so a stream is fully
/// determined by its key and every draw sequence is identical across runs and
/// platforms at the level of drawn 64-bit integers. stream() derives a child
/// key without perturbing the parent, which gives independent reproducible
/// streams per (experiment, block, iteration).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    /// Child stream keyed by a label ("block", "data", ...).
    Rng stream(std::string_view label) const;
    /// Child stream keyed by an index (iteration, edge, seed slot, ...).
    Rng stream(std::uint64_t salt) const;

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double next_double();
    /// Standard normal via Box-Muller (consumes two integer draws).
    double next_gaussian();
    /// Uniform integer in [0, n). n must be positive.
    std::size_t next_below(std::size_t n);

    std::uint64_t key() const { return key_; }

  private:
    Rng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}
    std::uint64_t key_;
    std::uint64_t counter_;
};

double dot(const Vec& a, const Vec& b);
double l1_norm(const Vec& x);
double l2_norm(const Vec& x);
double linf_norm(const Vec& x);
bool all_finite(const Vec& x);

/// y += alpha * x
void add_scaled(Vec& y, double alpha, const Vec& x);

/// Central differences (f(x + h e_i) - f(x - h e_i)) / (2h) per coordinate.
/// Throws if any evaluation of f is non-finite.
Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& x, double h);

/// FNV-1a over raw bytes; used to fingerprint iterates in run records.
std::uint64_t hash_bytes(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t hash_vec(const Vec& x, std::uint64_t h = 0xcbf29ce484222325ULL);

/// Fisher-Yates permutation of {0, ..., n-1}.
std::vector<int> random_permutation(int n, Rng& rng);

}  // namespace gaea
