// Test-only oracles, independent of the implementation paths they check:
// adaptive quadrature for cap areas and continuum energies, a linear
// region scan as the lookup reference, and a chi-square quantile for the
// equidistribution tests.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "eqsp/eq_partition.hpp"
#include "eqsp/sphere_geometry.hpp"

namespace oracle {

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Defining integral of the cap area, omega_{d-1} * int_0^theta sin^{d-1}.
inline double cap_area_quadrature(int dim, double theta) {
    if (dim == 1) return 2.0 * theta;
    const double shell = eqsp::sphere_area(dim - 1);
    return shell * integrate([dim](double x) { return std::pow(std::sin(x), dim - 1); }, 0.0, theta);
}

// Linear scan over the flat region list; the membership predicate is the
// shared half-open convention, so agreement with lookup must be exact.
// Returns -1 if no region matched, -2 if more than one did.
inline long long region_scan(const eqsp::RegionTree& tree, const eqsp::CartesianPoint& x) {
    const eqsp::PolarPoint angles = eqsp::from_cartesian(tree.spec.dim, x);
    long long found = -1;
    for (std::size_t i = 0; i < tree.regions.size(); ++i) {
        if (eqsp::region_contains(tree.regions[i], angles, tree.spec.dim)) {
            if (found >= 0) return -2;
            found = static_cast<long long>(i);
        }
    }
    return found;
}

// Wilson-Hilferty approximation of the chi-square quantile; accurate to
// a fraction of a percent for the degrees of freedom used here.
inline double chi_square_quantile(int dof, double p) {
    double z;
    if (p == 0.999) z = 3.090232306167814;
    else if (p == 0.99) z = 2.3263478740408408;
    else throw std::invalid_argument("chi_square_quantile: unsupported p");
    const double k = static_cast<double>(dof);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

}  // namespace oracle
