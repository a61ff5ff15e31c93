// Evaluation quantities for partitions and spherical codes: region
// diameters, packing (minimum distance, cap packing density), covering
// radius estimate, Riesz and logarithmic pair energies, and a spherical
// cap discrepancy estimate.  All randomized estimators take explicit
// seeds and sample counts and draw sequentially, so enlarging the sample
// extends the same stream (sup estimates are monotone in the budget).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqsp/eq_partition.hpp"
#include "eqsp/eq_points.hpp"
#include "eqsp/rng.hpp"

namespace eqsp {

namespace detail {

// Deterministic pairwise (tree) reduction; summation order is fixed by
// the recursion alone, so results do not depend on chunking.
inline double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 8) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Region diameters

// Exact diameter (maximum chord) of one region for d <= 2; for d >= 3 a
// lower bound from a sample grid with `boundary_samples` points per
// interval edge.  Cap regions are exact in every dimension.
inline double region_diameter(const Region& region, int dim, int boundary_samples = 5) {
    switch (region.kind) {
        case RegionKind::whole_sphere:
            return 2.0;
        case RegionKind::circle_segment: {
            const double w = std::min(region.intervals[0].width(), two_pi);
            return chord_of_angle(std::min(w, pi));
        }
        case RegionKind::cap_north: {
            const double r = region.intervals[0].hi;
            return (r >= 0.5 * pi) ? 2.0 : 2.0 * std::sin(r);
        }
        case RegionKind::cap_south: {
            const double r = pi - region.intervals[0].lo;
            return (r >= 0.5 * pi) ? 2.0 : 2.0 * std::sin(r);
        }
        case RegionKind::zonal:
            break;
    }

    if (dim == 2) {
        const double t1 = region.intervals[0].lo;
        const double t2 = region.intervals[0].hi;
        const double dphi = std::min(std::min(region.intervals[1].width(), two_pi), pi);
        // Chords of the two boundary arcs, the corner diagonal, and the
        // equator arc when the region straddles it.
        double best = 2.0 * std::sin(t1) * std::sin(0.5 * dphi);
        best = std::max(best, 2.0 * std::sin(t2) * std::sin(0.5 * dphi));
        const double diag_sq =
            2.0 - 2.0 * (std::cos(t1) * std::cos(t2) + std::sin(t1) * std::sin(t2) * std::cos(dphi));
        best = std::max(best, std::sqrt(std::max(0.0, diag_sq)));
        if (t1 <= 0.5 * pi && 0.5 * pi <= t2) best = std::max(best, 2.0 * std::sin(0.5 * dphi));
        return std::min(best, 2.0);
    }

    // d >= 3: max pairwise distance over the interval product sampled at
    // boundary_samples points per edge (endpoints included).
    const int s = std::max(2, boundary_samples);
    std::size_t total = 1;
    for (int j = 0; j < dim; ++j) total *= s;
    std::vector<CartesianPoint> pts;
    pts.reserve(total);
    PolarPoint angles(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int j = 0; j < dim; ++j) {
            const int step = static_cast<int>(rest % s);
            rest /= s;
            const Interval& iv = region.intervals[j];
            angles[j] = iv.lo + iv.width() * step / (s - 1);
        }
        pts.push_back(to_cartesian(dim, angles));
    }
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, chord_distance(pts[i], pts[j]));
    return best;
}

struct DiameterStats {
    double max_diameter = 0.0;
    double ratio = 0.0;  // max_diameter * N^(1/d)
};

inline DiameterStats max_diameter(const RegionTree& tree, int boundary_samples = 5) {
    double best = 0.0;
    for (const Region& r : tree.regions)
        best = std::max(best, region_diameter(r, tree.spec.dim, boundary_samples));
    const double scale = std::pow(static_cast<double>(tree.spec.n), 1.0 / tree.spec.dim);
    return {best, best * scale};
}

// ---------------------------------------------------------------------------
// Packing

// O(N^2) reference minimum pairwise distance.
inline double min_distance_bruteforce(const CodeSet& code) {
    const std::size_t n = code.size();
    if (n < 2) throw std::domain_error("min_distance: needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best = std::min(best, chord_distance(code[i], code[j]));
    return best;
}

// Colatitude-band sweep: points sorted by angle from +e_1; a pair whose
// colatitude gap alone already exceeds the current best chord cannot
// improve it, and neither can any later partner.  Returns the same
// value as the brute-force scan.
inline double min_distance(const CodeSet& code) {
    const std::size_t n = code.size();
    if (n < 2) throw std::domain_error("min_distance: needs at least two points");
    std::vector<double> colat(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        colat[i] = std::acos(std::clamp(code[i][0], -1.0, 1.0));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return colat[a] < colat[b]; });

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (chord_of_angle(colat[order[b]] - colat[order[a]]) >= best) break;
            best = std::min(best, chord_distance(code[order[a]], code[order[b]]));
        }
    }
    return best;
}

// Density of the packing by equal caps of angular radius half the
// minimum angular distance: N * cap_area(d, asin(min_dist/2)) / omega_d.
inline double packing_density(const CodeSet& code) {
    const double mind = min_distance(code);
    const double theta_pack = std::asin(std::clamp(0.5 * mind, 0.0, 1.0));
    return static_cast<double>(code.size()) * cap_area(code.dim, theta_pack) / sphere_area(code.dim);
}

// ---------------------------------------------------------------------------
// Covering

// Max over random probes of the angular distance to the nearest code
// point; a lower bound of the covering radius, monotone in `samples`.
inline double covering_radius(const CodeSet& code, long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::domain_error("covering_radius: needs at least one sample");
    if (code.size() == 0) throw std::domain_error("covering_radius: empty code");
    Rng rng(seed);
    CartesianPoint probe(code.dim + 1);
    double worst_sq = 0.0;
    for (long long t = 0; t < samples; ++t) {
        rng.unit_vector(code.dim, probe);
        double nearest_sq = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < code.size(); ++i) {
            const auto p = code[i];
            double sq = 0.0;
            for (int k = 0; k <= code.dim; ++k) {
                const double d = probe[k] - p[k];
                sq += d * d;
            }
            nearest_sq = std::min(nearest_sq, sq);
        }
        worst_sq = std::max(worst_sq, nearest_sq);
    }
    return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(worst_sq)));
}

// ---------------------------------------------------------------------------
// Pair energies

struct EnergyResult {
    double value = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> coincident;  // set when value is infinite
};

namespace detail {

template <class Kernel>
inline EnergyResult pair_energy(const CodeSet& code, Kernel&& kernel) {
    const std::size_t n = code.size();
    if (n < 2) throw std::domain_error("pair energy: needs at least two points");
    std::vector<double> row_sums(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = chord_distance(code[i], code[j]);
            if (dist == 0.0) {
                EnergyResult r;
                r.value = std::numeric_limits<double>::infinity();
                r.coincident = {i, j};
                return r;
            }
            row += kernel(dist);
        }
        row_sums[i] = row;
    }
    // Ordered pairs, 1/N^2 normalization.
    const double nd = static_cast<double>(n);
    return {2.0 * pairwise_sum(row_sums) / (nd * nd), std::nullopt};
}

}  // namespace detail

// Riesz s-energy (1/N^2) * sum_{x != y} |x-y|^{-s} over ordered pairs.
inline EnergyResult riesz_energy(const CodeSet& code, double s) {
    if (!(s > 0.0)) throw std::domain_error("riesz_energy: s must be positive");
    return detail::pair_energy(code, [s](double d) { return std::pow(d, -s); });
}

// Logarithmic energy (1/N^2) * sum_{x != y} log(1/|x-y|).
inline EnergyResult log_energy(const CodeSet& code) {
    return detail::pair_energy(code, [](double d) { return -std::log(d); });
}

// ---------------------------------------------------------------------------
// Spherical cap discrepancy

// Max over sampled caps of |empirical fraction in cap - normalized cap
// area|.  Each trial tests one uniformly random cap and one cap of the
// same radius centred on a code point (extremal caps tend to align with
// the point structure).  Lower bound of the true sup; deterministic and
// prefix-monotone for a fixed seed.
inline double cap_discrepancy(const CodeSet& code, long long trials, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("cap_discrepancy: needs at least one trial");
    const std::size_t n = code.size();
    if (n == 0) throw std::domain_error("cap_discrepancy: empty code");
    const double omega = sphere_area(code.dim);
    Rng rng(seed);
    CartesianPoint centre(code.dim + 1);

    auto deviation = [&](std::span<const double> c, double radius) {
        const double threshold = std::cos(radius);
        std::size_t inside = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (dot(code[i], c) >= threshold) ++inside;
        const double area_fraction = cap_area(code.dim, radius) / omega;
        return std::fabs(static_cast<double>(inside) / static_cast<double>(n) - area_fraction);
    };

    double worst = 0.0;
    for (long long t = 0; t < trials; ++t) {
        rng.unit_vector(code.dim, centre);
        const double radius = rng.uniform() * pi;
        worst = std::max(worst, deviation(centre, radius));
        worst = std::max(worst, deviation(code[static_cast<std::size_t>(t) % n], radius));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Aggregate report

struct MetricsReport {
    int dim = 0;
    long long n = 0;
    std::string generator;
    double max_region_diameter = std::numeric_limits<double>::quiet_NaN();  // partition-backed codes only
    double diameter_ratio = std::numeric_limits<double>::quiet_NaN();
    double min_distance = std::numeric_limits<double>::quiet_NaN();
    double min_distance_ratio = std::numeric_limits<double>::quiet_NaN();
    double packing_density = std::numeric_limits<double>::quiet_NaN();
    double covering_radius_estimate = std::numeric_limits<double>::quiet_NaN();
    std::map<double, double> riesz_energy;
    double log_energy = std::numeric_limits<double>::quiet_NaN();
    double cap_discrepancy_estimate = std::numeric_limits<double>::quiet_NaN();
    long long mc_samples = 0;
    std::uint64_t seed = 0;
};

// Full report for a code, with region diameters when the generating
// partition is supplied.  mc_samples drives both the covering and the
// discrepancy estimators.
inline MetricsReport compute_metrics(const CodeSet& code, const RegionTree* tree,
                                     std::span<const double> s_values, long long mc_samples,
                                     std::uint64_t seed) {
    MetricsReport report;
    report.dim = code.dim;
    report.n = static_cast<long long>(code.size());
    report.generator = generator_name(code.generator);
    report.mc_samples = mc_samples;
    report.seed = seed;

    const double scale = std::pow(static_cast<double>(report.n), 1.0 / report.dim);
    if (tree != nullptr) {
        const DiameterStats d = max_diameter(*tree);
        report.max_region_diameter = d.max_diameter;
        report.diameter_ratio = d.ratio;
    }
    if (report.n >= 2) {
        report.min_distance = min_distance(code);
        report.min_distance_ratio = report.min_distance * scale;
        report.packing_density = packing_density(code);
        for (double s : s_values) report.riesz_energy[s] = riesz_energy(code, s).value;
        report.log_energy = log_energy(code).value;
    }
    if (mc_samples > 0) {
        report.covering_radius_estimate = covering_radius(code, mc_samples, seed);
        report.cap_discrepancy_estimate = cap_discrepancy(code, mc_samples, seed);
    }
    return report;
}

}  // namespace eqsp
