// Recursive zonal equal-area partition EQ(d,N) of the unit sphere S^d:
// two polar caps plus a stack of collars, each collar split by the
// (d-1)-dimensional partition of its own region count.  Every region
// is a product of d angular intervals with area sphere_area(d)/N.
//
// Conventions fixed here and relied on by the point and lookup modules:
//   - region order: north cap, collars north to south (regions within a
//     collar in the sub-partition's own order), south cap;
//   - intervals are half-open [lo, hi), except closed at hi == pi, so
//     every point of the sphere belongs to exactly one region;
//   - azimuth intervals of staggered collars are stored shifted by the
//     collar offset and may extend past 2*pi; membership is modulo 2*pi.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqsp/sphere_geometry.hpp"

namespace eqsp {

enum class OffsetScheme { none, stagger };

enum class RegionKind { cap_north, cap_south, zonal, whole_sphere, circle_segment };

struct PartitionSpec {
    int dim = 2;
    long long n = 1;
    OffsetScheme offset_scheme = OffsetScheme::none;
    double tolerance = 1e-12;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

struct Region {
    std::vector<Interval> intervals;  // level 0 = top colatitude, last = azimuth
    RegionKind kind = RegionKind::zonal;
};

struct CollarNode;

struct RegionTree {
    PartitionSpec spec;
    double cap_colatitude = 0.0;    // pi for N == 1, 0 for circles
    std::vector<CollarNode> collars;
    std::vector<Region> regions;    // flat list, construction order
};

struct CollarNode {
    Interval colatitude;
    long long count = 0;            // regions in this collar
    double azimuth_offset = 0.0;    // nonzero only on staggered d == 2 trees
    long long first_region = 0;     // index of the collar's first region in the flat list
    RegionTree sub;                 // EQ(dim-1, count)
};

// Side length of a d-cube with one region's area: the ideal collar angle
// of step 2.
inline double ideal_collar_angle(int dim, long long n) {
    require_dimension(dim);
    if (n < 1) throw std::domain_error("ideal_collar_angle: N must be positive");
    return std::pow(sphere_area(dim) / static_cast<double>(n), 1.0 / dim);
}

// Steps 3-4: round the ideal collar count (fitting the ideal angle into
// the band between the caps) to the nearest integer, at least 1.
inline int num_collars(int dim, long long n, double cap_colat) {
    const double ideal = (pi - 2.0 * cap_colat) / ideal_collar_angle(dim, n);
    return std::max(1, static_cast<int>(std::nearbyint(ideal)));
}

// Steps 5-6: ideal region counts per collar from equal-height fitting
// zones, then cumulative rounding that carries the running discrepancy
// so that every prefix sum stays within 1 of its ideal value and the
// total is exactly N - 2.
inline std::vector<long long> collar_counts(int dim, long long n, double cap_colat, int n_collars) {
    if (n < 3) throw std::domain_error("collar_counts: needs N >= 3");
    if (n_collars < 1) throw std::domain_error("collar_counts: needs at least one collar");
    const double region_area = sphere_area(dim) / static_cast<double>(n);
    const double fitting_angle = (pi - 2.0 * cap_colat) / n_collars;

    std::vector<long long> counts(n_collars);
    double carry = 0.0;
    double area_below = cap_area(dim, cap_colat);
    for (int i = 1; i <= n_collars; ++i) {
        const double top = (i == n_collars) ? pi - cap_colat : cap_colat + i * fitting_angle;
        const double area = cap_area(dim, top);
        const double ideal = (area - area_below) / region_area;
        const long long m = static_cast<long long>(std::llround(ideal + carry));
        if (m < 1)
            throw std::runtime_error("collar_counts: collar " + std::to_string(i) + " rounded to zero regions");
        carry += ideal - m;
        counts[i - 1] = m;
        area_below = area;
    }
    if (std::accumulate(counts.begin(), counts.end(), 0LL) != n - 2)
        throw std::runtime_error("collar_counts: counts do not sum to N - 2");
    return counts;
}

// Step 7: zone boundaries recomputed from the cumulative actual counts,
// so each collar's area is an exact multiple of the region area (the
// fitting angles of step 5 are only approximately right).  Returns
// n_collars + 1 colatitudes from cap_colat to pi - cap_colat.
inline std::vector<double> zone_colatitudes(int dim, long long n, std::span<const long long> counts) {
    const double omega = sphere_area(dim);
    const double cap_colat = cap_colatitude(dim, omega / static_cast<double>(n));
    std::vector<double> bounds(counts.size() + 1);
    bounds.front() = cap_colat;
    bounds.back() = pi - cap_colat;
    long long cumulative = 1;  // the north cap
    for (std::size_t i = 1; i < counts.size(); ++i) {
        cumulative += counts[i - 1];
        bounds[i] = cap_colatitude(dim, static_cast<double>(cumulative) * omega / static_cast<double>(n));
    }
    return bounds;
}

namespace detail {

// Azimuth rotations between adjacent collars that maximize the minimum
// azimuthal gap between the two rings of centre points.  Point azimuths
// of a ring of m regions are offset + (2k+1)*pi/m, so the gap pattern of
// adjacent rings repeats with period 2*pi*gcd/(m_top*m_bot); the best
// relative rotation is half of that period plus the phase difference of
// the two midpoint grids.  For equal counts this is half the point
// spacing (pi/m).  Offsets accumulate north to south, reduced modulo
// each collar's own point period 2*pi/m.
inline std::vector<double> stagger_offsets(std::span<const long long> counts) {
    std::vector<double> offsets(counts.size(), 0.0);
    for (std::size_t i = 1; i < counts.size(); ++i) {
        const long long top = counts[i - 1];
        const long long bot = counts[i];
        const double step = pi * (1.0 / bot - 1.0 / top) +
                            pi * static_cast<double>(std::gcd(top, bot)) / static_cast<double>(top * bot);
        const double period = two_pi / static_cast<double>(bot);
        double offset = std::fmod(offsets[i - 1] + step, period);
        if (offset < 0.0) offset += period;
        offsets[i] = offset;
    }
    return offsets;
}

inline std::vector<Interval> full_intervals(int dim) {
    std::vector<Interval> ivs(dim);
    for (int j = 0; j + 1 < dim; ++j) ivs[j] = {0.0, pi};
    ivs[dim - 1] = {0.0, two_pi};
    return ivs;
}

}  // namespace detail

// Analytic area of a product region: colatitude levels contribute
// (cap_area(k, hi) - cap_area(k, lo)) / sphere_area(k-1) for the level
// dimension k, the azimuth level contributes its width.
inline double region_area(const Region& region, int dim) {
    if (static_cast<int>(region.intervals.size()) != dim)
        throw std::domain_error("region_area: interval count does not match dimension");
    double area = region.intervals[dim - 1].width();
    for (int j = 0; j + 1 < dim; ++j) {
        const int level_dim = dim - j;
        const Interval& iv = region.intervals[j];
        area *= (cap_area(level_dim, iv.hi) - cap_area(level_dim, iv.lo)) / sphere_area(level_dim - 1);
    }
    return area;
}

// Half-open membership of polar angles in a region's interval product.
// Colatitude levels close at hi == pi; the azimuth level is tested
// modulo 2*pi (staggered intervals may extend past 2*pi).
inline bool region_contains(const Region& region, std::span<const double> angles, int dim) {
    for (int j = 0; j < dim; ++j) {
        const Interval& iv = region.intervals[j];
        const double a = angles[j];
        if (j == dim - 1) {
            if (iv.width() >= two_pi) continue;
            if (a >= iv.lo && a < iv.hi) continue;
            const double wrapped = a + two_pi;
            if (wrapped >= iv.lo && wrapped < iv.hi) continue;
            return false;
        }
        if (a < iv.lo) return false;
        if (a < iv.hi) continue;
        if (a == iv.hi && iv.hi == pi) continue;  // closed at the south pole
        return false;
    }
    return true;
}

inline RegionTree eq_partition(const PartitionSpec& spec);

namespace detail {

inline void validate_region_areas(const RegionTree& tree) {
    const double omega = sphere_area(tree.spec.dim);
    const double target = omega / static_cast<double>(tree.spec.n);
    const double tol = tree.spec.tolerance * omega;
    for (std::size_t i = 0; i < tree.regions.size(); ++i) {
        const double area = region_area(tree.regions[i], tree.spec.dim);
        if (std::fabs(area - target) > tol)
            throw std::runtime_error("eq_partition: region " + std::to_string(i) +
                                     " area deviates beyond tolerance");
    }
}

}  // namespace detail

// The partition algorithm.  Recursive in dimension: caps and collars for
// d >= 2, equal segments for the circle, with each collar's interior
// delegated to EQ(d-1, m).
inline RegionTree eq_partition(const PartitionSpec& spec) {
    require_dimension(spec.dim);
    if (spec.n < 1) throw std::domain_error("eq_partition: N must be positive");
    if (!(spec.tolerance > 0.0)) throw std::domain_error("eq_partition: tolerance must be positive");

    RegionTree tree;
    tree.spec = spec;
    const int dim = spec.dim;
    const long long n = spec.n;

    if (n == 1) {
        tree.cap_colatitude = (dim == 1) ? 0.0 : pi;
        tree.regions.push_back({detail::full_intervals(dim), RegionKind::whole_sphere});
        return tree;
    }

    if (dim == 1) {
        tree.regions.reserve(n);
        for (long long k = 0; k < n; ++k) {
            const double lo = two_pi * static_cast<double>(k) / static_cast<double>(n);
            const double hi = two_pi * static_cast<double>(k + 1) / static_cast<double>(n);
            tree.regions.push_back({{{lo, hi}}, RegionKind::circle_segment});
        }
        return tree;
    }

    const double omega = sphere_area(dim);
    tree.cap_colatitude = cap_colatitude(dim, omega / static_cast<double>(n));

    Region north{detail::full_intervals(dim), RegionKind::cap_north};
    north.intervals[0] = {0.0, tree.cap_colatitude};
    tree.regions.reserve(n);
    tree.regions.push_back(std::move(north));

    // The south cap tiles against whatever boundary came before it; for
    // N == 2 that is the north cap itself, sharing the exact double.
    double south_lo = tree.cap_colatitude;

    if (n >= 3) {
        const int n_collars = num_collars(dim, n, tree.cap_colatitude);
        const auto counts = collar_counts(dim, n, tree.cap_colatitude, n_collars);
        const auto bounds = zone_colatitudes(dim, n, counts);
        std::vector<double> offsets(counts.size(), 0.0);
        if (dim == 2 && spec.offset_scheme == OffsetScheme::stagger)
            offsets = detail::stagger_offsets(counts);

        tree.collars.reserve(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            CollarNode collar;
            collar.colatitude = {bounds[i], bounds[i + 1]};
            collar.count = counts[i];
            collar.azimuth_offset = offsets[i];
            collar.first_region = static_cast<long long>(tree.regions.size());
            collar.sub = eq_partition({dim - 1, counts[i], spec.offset_scheme, spec.tolerance});

            for (const Region& sub_region : collar.sub.regions) {
                Region region;
                region.kind = RegionKind::zonal;
                region.intervals.reserve(dim);
                region.intervals.push_back(collar.colatitude);
                region.intervals.insert(region.intervals.end(),
                                        sub_region.intervals.begin(), sub_region.intervals.end());
                if (collar.azimuth_offset != 0.0) {
                    Interval& az = region.intervals.back();
                    az = {az.lo + collar.azimuth_offset, az.hi + collar.azimuth_offset};
                }
                tree.regions.push_back(std::move(region));
            }
            tree.collars.push_back(std::move(collar));
        }
        south_lo = bounds.back();
    }

    Region south{detail::full_intervals(dim), RegionKind::cap_south};
    south.intervals[0] = {south_lo, pi};
    tree.regions.push_back(std::move(south));

    if (static_cast<long long>(tree.regions.size()) != n)
        throw std::runtime_error("eq_partition: region count mismatch");
    detail::validate_region_areas(tree);
    return tree;
}

}  // namespace eqsp
