// Spherical codes EQP(d,N): one centre point per region of EQ(d,N).
// Cap regions take their pole at every recursion level, collar regions
// take the angular midpoint of each interval, circle segments their
// midpoint.  Collar azimuth offsets are applied at the azimuth level of
// every d == 2 sub-tree when the partition was built with staggering.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "eqsp/eq_partition.hpp"
#include "eqsp/sphere_geometry.hpp"

namespace eqsp {

enum class Generator { eqp, random_uniform, spiral, fibonacci, halton_mapped };

// Placement of collar centre points along the colatitude: the angular
// midpoint of the band (default), or the colatitude that bisects the
// band's area.
enum class CentreRule { angular_midpoint, area_median };

inline const char* generator_name(Generator g) {
    switch (g) {
        case Generator::eqp: return "eqp";
        case Generator::random_uniform: return "random_uniform";
        case Generator::spiral: return "spiral";
        case Generator::fibonacci: return "fibonacci";
        case Generator::halton_mapped: return "halton";
    }
    return "unknown";
}

// An ordered set of N unit vectors in R^{d+1} with generator provenance.
// Coordinates are stored flat, stride d+1.
struct CodeSet {
    int dim = 2;
    std::vector<double> coords;
    Generator generator = Generator::eqp;
    std::map<std::string, double> params;

    std::size_t size() const { return coords.size() / (dim + 1); }

    std::span<const double> operator[](std::size_t i) const {
        return {coords.data() + i * (dim + 1), static_cast<std::size_t>(dim + 1)};
    }

    void push_back(std::span<const double> x) { coords.insert(coords.end(), x.begin(), x.end()); }
};

namespace detail {

inline double reduce_azimuth(double phi) {
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return phi;
}

inline double collar_centre_colatitude(int dim, const Interval& band, CentreRule rule) {
    if (rule == CentreRule::area_median)
        return cap_colatitude(dim, 0.5 * (cap_area(dim, band.lo) + cap_area(dim, band.hi)));
    return band.midpoint();
}

// Centre points in polar coordinates, in region order.  `out` receives
// one d-angle point per region; `prefix` carries the angles of the
// enclosing collars.
inline void centre_points_polar(const RegionTree& tree, CentreRule rule,
                                std::vector<double>& prefix, std::vector<PolarPoint>& out) {
    const int dim = tree.spec.dim;
    const long long n = tree.spec.n;

    // Total angle count of a finished point: the ancestors' prefix as it
    // is on entry plus this tree's own d levels.
    const std::size_t total = prefix.size() + static_cast<std::size_t>(dim);
    auto emit = [&, total](std::initializer_list<double> own) {
        PolarPoint p(prefix);
        p.insert(p.end(), own.begin(), own.end());
        p.resize(total, 0.0);  // pole convention: unset angles are 0
        out.push_back(std::move(p));
    };

    if (n == 1) {
        if (dim == 1) emit({pi});      // midpoint of the full circle
        else emit({});                 // north pole
        return;
    }
    if (dim == 1) {
        for (const Region& r : tree.regions) emit({r.intervals[0].midpoint()});
        return;
    }

    emit({});  // north cap -> pole
    for (const CollarNode& collar : tree.collars) {
        prefix.push_back(collar_centre_colatitude(dim, collar.colatitude, rule));
        if (dim == 2) {
            for (const Region& r : collar.sub.regions)
                emit({reduce_azimuth(r.intervals[0].midpoint() + collar.azimuth_offset)});
        } else {
            centre_points_polar(collar.sub, rule, prefix, out);
        }
        prefix.pop_back();
    }
    emit({pi});  // south cap -> pole
}

}  // namespace detail

// The EQP(d,N) code for a built partition, one point per region in
// region order.
inline CodeSet eq_points(const RegionTree& tree, CentreRule rule = CentreRule::angular_midpoint) {
    std::vector<PolarPoint> polar;
    polar.reserve(tree.spec.n);
    std::vector<double> prefix;
    detail::centre_points_polar(tree, rule, prefix, polar);

    CodeSet code;
    code.dim = tree.spec.dim;
    code.generator = Generator::eqp;
    code.params["stagger"] = (tree.spec.offset_scheme == OffsetScheme::stagger) ? 1.0 : 0.0;
    code.params["area_median"] = (rule == CentreRule::area_median) ? 1.0 : 0.0;
    code.coords.reserve(polar.size() * (tree.spec.dim + 1));
    for (const PolarPoint& p : polar) code.push_back(to_cartesian(tree.spec.dim, p));
    return code;
}

// Azimuth offsets per collar of a d == 2 tree (all zero unless the tree
// was built with OffsetScheme::stagger).
inline std::vector<double> collar_offsets(const RegionTree& tree) {
    if (tree.spec.dim != 2) throw std::domain_error("collar_offsets: defined for d == 2 trees");
    std::vector<double> offsets;
    offsets.reserve(tree.collars.size());
    for (const CollarNode& c : tree.collars) offsets.push_back(c.azimuth_offset);
    return offsets;
}

}  // namespace eqsp
