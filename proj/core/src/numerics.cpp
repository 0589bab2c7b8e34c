#include "gaea/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace gaea {

namespace {

// SplitMix64 finalizer. Bijective, good avalanche; the whole RNG reduces to
// mix(key + GOLDEN * counter).
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a_u64(std::uint64_t h, const unsigned char* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(mix64(seed + kGolden)), counter_(0) {}

Rng Rng::stream(std::string_view label) const {
    std::uint64_t h = fnv1a_u64(0xcbf29ce484222325ULL,
                                reinterpret_cast<const unsigned char*>(label.data()),
                                label.size());
    return Rng(mix64(key_ ^ mix64(h + kGolden)), 0);
}

Rng Rng::stream(std::uint64_t salt) const {
    return Rng(mix64(key_ ^ mix64(salt * kGolden + 0x632be59bd9b4e019ULL)), 0);
}

std::uint64_t Rng::next_u64() {
    ++counter_;
    return mix64(key_ + kGolden * counter_);
}

double Rng::next_double() {
    // 53 high bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
    // Box-Muller; u clamped away from 0 so log stays finite.
    double u = next_double();
    double v = next_double();
    if (u < 0x1.0p-53) u = 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
}

std::size_t Rng::next_below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_below: n must be positive");
    // Lemire's multiply-shift; bias is < 2^-64 * n, irrelevant at our ranges.
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64());
    return static_cast<std::size_t>((wide * n) >> 64);
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l1_norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
}

double l2_norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double linf_norm(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

bool all_finite(const Vec& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

void add_scaled(Vec& y, double alpha, const Vec& x) {
    if (y.size() != x.size()) throw std::invalid_argument("add_scaled: length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff_grad: h must be positive");
    Vec g(x.size());
    Vec p = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        p[i] = xi + h;
        const double fp = f(p);
        p[i] = xi - h;
        const double fm = f(p);
        p[i] = xi;
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("finite_diff_grad: non-finite evaluation at coordinate " +
                                     std::to_string(i));
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

std::uint64_t hash_bytes(const void* data, std::size_t n, std::uint64_t h) {
    return fnv1a_u64(h, static_cast<const unsigned char*>(data), n);
}

std::uint64_t hash_vec(const Vec& x, std::uint64_t h) {
    return x.empty() ? h : hash_bytes(x.data(), x.size() * sizeof(double), h);
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        const auto j = rng.next_below(static_cast<std::size_t>(i + 1));
        std::swap(p[static_cast<std::size_t>(i)], p[j]);
    }
    return p;
}

}  // namespace gaea
