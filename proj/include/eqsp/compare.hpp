// Alternative point constructions on the sphere and a side-by-side
// comparison table: i.i.d. uniform points, the generalized spiral,
// spherical Fibonacci lattices, and Halton points mapped area-
// preservingly to S^2.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqsp/eq_points.hpp"
#include "eqsp/quality_metrics.hpp"
#include "eqsp/region_lookup.hpp"
#include "eqsp/rng.hpp"

namespace eqsp {

// N i.i.d. uniform points on S^d via normalized Gaussians.
inline CodeSet random_uniform(int dim, long long n, std::uint64_t seed) {
    require_dimension(dim);
    if (n < 1) throw std::domain_error("random_uniform: N must be positive");
    CodeSet code;
    code.dim = dim;
    code.generator = Generator::random_uniform;
    code.params["seed"] = static_cast<double>(seed);
    code.coords.resize(n * (dim + 1));
    Rng rng(seed);
    for (long long i = 0; i < n; ++i)
        rng.unit_vector(dim, std::span<double>(code.coords.data() + i * (dim + 1), dim + 1));
    return code;
}

// Generalized spiral of Rakhmanov-Saff-Zhou type on S^2: equal-area
// heights z_k = 1 - (2k-1)/N, azimuth advanced by C / sqrt(N (1-z^2))
// with C = 3.6.  The polar axis is +e_1, matching the partition.
inline CodeSet spiral_points(long long n, double c = 3.6) {
    if (n < 2) throw std::domain_error("spiral_points: needs N >= 2");
    CodeSet code;
    code.dim = 2;
    code.generator = Generator::spiral;
    code.params["c"] = c;
    code.coords.reserve(n * 3);
    double phi = 0.0;
    for (long long k = 1; k <= n; ++k) {
        const double z = 1.0 - (2.0 * k - 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        if (k > 1) phi = std::fmod(phi + c / std::sqrt(n * (1.0 - z * z)), two_pi);
        const double p[3] = {z, r * std::cos(phi), r * std::sin(phi)};
        code.push_back(p);
    }
    return code;
}

// Spherical Fibonacci lattice: z_k = 1 - (2k+1)/N, azimuth rotating by
// the golden ratio conjugate per step.
inline CodeSet fibonacci_points(long long n) {
    if (n < 1) throw std::domain_error("fibonacci_points: N must be positive");
    constexpr double golden_conjugate = 0.6180339887498949;  // (sqrt(5)-1)/2
    CodeSet code;
    code.dim = 2;
    code.generator = Generator::fibonacci;
    code.coords.reserve(n * 3);
    for (long long k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = two_pi * std::fmod(static_cast<double>(k) * golden_conjugate, 1.0);
        const double p[3] = {z, r * std::cos(phi), r * std::sin(phi)};
        code.push_back(p);
    }
    return code;
}

namespace detail {

inline bool is_prime(int v) {
    if (v < 2) return false;
    for (int f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

// Radical inverse of k in the given base.
inline double radical_inverse(long long k, int base) {
    double inv = 1.0 / base;
    double scale = inv;
    double value = 0.0;
    while (k > 0) {
        value += (k % base) * scale;
        k /= base;
        scale *= inv;
    }
    return value;
}

}  // namespace detail

// Halton sequence in [0,1]^2 mapped area-preservingly to S^2:
// z = 1 - 2u, phi = 2*pi*v.  Indexing starts at k = 1.
inline CodeSet halton_mapped(long long n, int base_u = 2, int base_v = 3) {
    if (n < 1) throw std::domain_error("halton_mapped: N must be positive");
    if (!detail::is_prime(base_u) || !detail::is_prime(base_v) || base_u == base_v)
        throw std::invalid_argument("halton_mapped: bases must be distinct primes");
    CodeSet code;
    code.dim = 2;
    code.generator = Generator::halton_mapped;
    code.params["base_u"] = base_u;
    code.params["base_v"] = base_v;
    code.coords.reserve(n * 3);
    for (long long k = 1; k <= n; ++k) {
        const double z = 1.0 - 2.0 * detail::radical_inverse(k, base_u);
        const double phi = two_pi * detail::radical_inverse(k, base_v);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double p[3] = {z, r * std::cos(phi), r * std::sin(phi)};
        code.push_back(p);
    }
    return code;
}

// Generator dispatch by name; throws on unknown names and on
// generator/dimension mismatches.
inline CodeSet make_code(const std::string& generator, int dim, long long n, std::uint64_t seed) {
    if (generator == "eqp") return eq_points(eq_partition({dim, n}));
    if (generator == "random_uniform") return random_uniform(dim, n, seed);
    if (dim != 2)
        throw std::invalid_argument("generator '" + generator + "' is defined for d = 2 only");
    if (generator == "spiral") return spiral_points(n);
    if (generator == "fibonacci") return fibonacci_points(n);
    if (generator == "halton") return halton_mapped(n);
    throw std::invalid_argument("unknown generator '" + generator + "'");
}

struct CompareRow {
    std::string generator;
    long long n = 0;
    std::string metric;
    double value = 0.0;
    std::uint64_t seed = 0;
};

struct CompareOptions {
    long long mc_samples = 10000;  // budget for covering / discrepancy estimators
};

namespace detail {

inline double evaluate_metric(const std::string& metric, const CodeSet& code, std::uint64_t seed,
                              const CompareOptions& opts) {
    const double scale = std::pow(static_cast<double>(code.size()), 1.0 / code.dim);
    if (metric == "min_distance") return min_distance(code);
    if (metric == "min_distance_ratio") return min_distance(code) * scale;
    if (metric == "packing_density") return packing_density(code);
    if (metric == "log_energy") return log_energy(code).value;
    if (metric == "covering_radius") return covering_radius(code, opts.mc_samples, seed);
    if (metric == "cap_discrepancy") return cap_discrepancy(code, opts.mc_samples, seed);
    if (metric.rfind("riesz_", 0) == 0) {
        const double s = std::stod(metric.substr(6));
        return riesz_energy(code, s).value;
    }
    throw std::invalid_argument("unknown metric '" + metric + "'");
}

}  // namespace detail

// Long-form comparison table over generators x N x metrics.  One code is
// generated per (generator, N) cell; rows appear in generator-major,
// then N, then metric order.
inline std::vector<CompareRow> compare(int dim, std::span<const std::string> generators,
                                       std::span<const long long> n_sweep,
                                       std::span<const std::string> metrics, std::uint64_t seed,
                                       const CompareOptions& opts = {}) {
    std::vector<CompareRow> rows;
    rows.reserve(generators.size() * n_sweep.size() * metrics.size());
    for (const std::string& g : generators) {
        for (long long n : n_sweep) {
            const CodeSet code = make_code(g, dim, n, seed);
            for (const std::string& m : metrics)
                rows.push_back({g, n, m, detail::evaluate_metric(m, code, seed, opts), seed});
        }
    }
    return rows;
}

}  // namespace eqsp
