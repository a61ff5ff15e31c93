// Point-to-region lookup, the inverse of eq_partition: binary search on
// the collar colatitudes, then recursion into the collar's sub-partition,
// O(log collars) per level.  Shares the half-open boundary convention
// with the stored region intervals, so it agrees exactly with a linear
// scan over the flat region list (the test oracle).

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "eqsp/eq_partition.hpp"

namespace eqsp {

namespace detail {

// Segment of a d == 1 tree containing azimuth phi in [0, 2*pi).  Seeded
// by division, then nudged against the stored interval bounds so ties
// resolve exactly like the stored half-open intervals.
inline long long circle_segment_index(const RegionTree& tree, double phi) {
    const long long n = tree.spec.n;
    if (n == 1) return 0;
    long long k = static_cast<long long>(phi / (two_pi / static_cast<double>(n)));
    if (k > n - 1) k = n - 1;
    if (k < 0) k = 0;
    while (k + 1 < n && phi >= tree.regions[k].intervals[0].hi) ++k;
    while (k > 0 && phi < tree.regions[k].intervals[0].lo) --k;
    return k;
}

// Membership of phi in a (possibly shifted past 2*pi) azimuth interval.
inline bool azimuth_in(const Interval& iv, double phi) {
    if (iv.width() >= two_pi) return true;
    if (phi >= iv.lo && phi < iv.hi) return true;
    const double wrapped = phi + two_pi;
    return wrapped >= iv.lo && wrapped < iv.hi;
}

inline long long lookup_polar(const RegionTree& tree, std::span<const double> angles) {
    const int dim = tree.spec.dim;
    const long long n = tree.spec.n;
    if (n == 1) return 0;
    if (dim == 1) return circle_segment_index(tree, angles[0]);

    const double theta = angles[0];
    if (theta < tree.cap_colatitude) return 0;
    if (tree.collars.empty()) return n - 1;  // N == 2
    if (theta >= tree.collars.back().colatitude.hi) return n - 1;

    // First collar whose upper boundary lies above theta; boundaries are
    // shared doubles, so the half-open convention falls out of operator<.
    const auto it = std::upper_bound(tree.collars.begin(), tree.collars.end(), theta,
                                     [](double t, const CollarNode& c) { return t < c.colatitude.hi; });
    const CollarNode& collar = *it;

    if (dim == 2) {
        const double phi = angles[1];
        const long long m = collar.count;
        long long k;
        if (collar.azimuth_offset == 0.0) {
            k = circle_segment_index(collar.sub, phi);
        } else {
            // Seed from the unrotated sub-partition, then settle against
            // the stored (shifted) intervals of this tree's flat list.
            double unrotated = phi - collar.azimuth_offset;
            if (unrotated < 0.0) unrotated += two_pi;
            if (unrotated >= two_pi) unrotated -= two_pi;
            k = static_cast<long long>(unrotated / (two_pi / static_cast<double>(m)));
            if (k > m - 1) k = m - 1;
            auto shifted = [&](long long idx) -> const Interval& {
                return tree.regions[collar.first_region + idx].intervals[1];
            };
            if (!azimuth_in(shifted(k), phi)) {
                const long long up = (k + 1) % m;
                const long long down = (k + m - 1) % m;
                if (azimuth_in(shifted(up), phi)) k = up;
                else if (azimuth_in(shifted(down), phi)) k = down;
                else
                    for (long long j = 0; j < m; ++j)
                        if (azimuth_in(shifted(j), phi)) { k = j; break; }
            }
        }
        return collar.first_region + k;
    }
    return collar.first_region + lookup_polar(collar.sub, angles.subspan(1));
}

}  // namespace detail

// Index of the region of tree containing the unit vector x.
inline long long lookup(const RegionTree& tree, const CartesianPoint& x) {
    const PolarPoint angles = from_cartesian(tree.spec.dim, x);
    return detail::lookup_polar(tree, angles);
}

// Per-region counts of a batch of points.
inline std::vector<long long> histogram(const RegionTree& tree, std::span<const CartesianPoint> points) {
    std::vector<long long> counts(tree.spec.n, 0);
    for (const CartesianPoint& x : points) ++counts[lookup(tree, x)];
    return counts;
}

}  // namespace eqsp
