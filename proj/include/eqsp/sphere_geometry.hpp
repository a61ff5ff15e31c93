// Measure geometry on the unit sphere S^d embedded in R^{d+1}:
// total surface area, spherical cap areas and their inverse, and the
// recursive polar <-> Cartesian coordinate conversions.
//
// Coordinate convention: colatitude-first recursive polar coordinates.
// A point of S^d is d angles (theta_0, ..., theta_{d-2}, phi) with the
// colatitudes theta_j in [0, pi] measured from the +e_1 axis of the
// respective recursion level and the azimuth phi in [0, 2*pi).  The
// embedding is x = (cos theta_0, sin theta_0 * y) with y on S^{d-1}.

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "eqsp/incomplete_beta.hpp"

namespace eqsp {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Angles of one point in the recursive polar coordinate system; for
// dimension d the vector has d entries, azimuth last.
using PolarPoint = std::vector<double>;

// Unit vector in R^{d+1}.
using CartesianPoint = std::vector<double>;

inline void require_dimension(int dim) {
    if (dim < 1) throw std::domain_error("sphere dimension must be >= 1");
}

// Surface area of S^d: omega_d = 2 * pi^((d+1)/2) / Gamma((d+1)/2).
inline double sphere_area(int dim) {
    require_dimension(dim);
    const double half = 0.5 * (dim + 1);
    return 2.0 * std::exp(half * std::log(pi) - std::lgamma(half));
}

// Area of the spherical cap of angular radius theta about a pole of S^d,
//   omega_{d-1} * integral_0^theta sin^{d-1}(xi) d xi.
// Closed forms for d <= 3; otherwise the identity
//   cap_area(d, theta) = omega_d * I_{sin^2(theta/2)}(d/2, d/2)
// which holds on all of [0, pi].
inline double cap_area(int dim, double theta) {
    require_dimension(dim);
    if (!(theta >= 0.0 && theta <= pi)) throw std::domain_error("cap_area: theta outside [0, pi]");
    switch (dim) {
        case 1: return 2.0 * theta;
        case 2: return two_pi * (1.0 - std::cos(theta));
        case 3: return two_pi * (theta - std::sin(theta) * std::cos(theta));
        default: {
            const double s = std::sin(0.5 * theta);
            return sphere_area(dim) * regularized_incomplete_beta(s * s, 0.5 * dim, 0.5 * dim);
        }
    }
}

// d/dtheta cap_area = omega_{d-1} * sin^{d-1}(theta).
inline double cap_area_derivative(int dim, double theta) {
    if (dim == 1) return 2.0;
    return sphere_area(dim - 1) * std::pow(std::sin(theta), dim - 1);
}

// Inverse of cap_area in theta: the colatitude whose cap has the given
// area.  Newton iteration inside a shrinking bisection bracket; the
// bracket guarantees termination near the poles where the derivative
// vanishes.  Converges to |cap_area(theta) - area| <= 1e-13 * omega_d.
inline double cap_colatitude(int dim, double area) {
    require_dimension(dim);
    const double omega = sphere_area(dim);
    if (!(area >= -1e-9 * omega && area <= omega * (1.0 + 1e-9)))
        throw std::domain_error("cap_colatitude: area outside [0, sphere_area]");
    if (area <= 0.0) return 0.0;
    if (area >= omega) return pi;

    switch (dim) {
        case 1: return 0.5 * area;
        case 2: {
            double c = 1.0 - area / two_pi;
            if (c > 1.0) c = 1.0;
            if (c < -1.0) c = -1.0;
            return std::acos(c);
        }
        default: break;
    }

    const double tol = 1e-13 * omega;
    double lo = 0.0, hi = pi;
    // Seed from the small-cap asymptotics cap_area ~ omega_{d-1} theta^d / d,
    // reflected through the equator for the southern half.
    const bool reflect = area > 0.5 * omega;
    const double small = reflect ? omega - area : area;
    double theta = std::pow(dim * small / sphere_area(dim - 1), 1.0 / dim);
    if (!(theta > 0.0 && theta < 0.5 * pi)) theta = 0.25 * pi;
    if (reflect) theta = pi - theta;

    for (int iter = 0; iter < 300; ++iter) {
        const double f = cap_area(dim, theta) - area;
        if (f > 0.0) hi = theta; else lo = theta;
        const double df = cap_area_derivative(dim, theta);
        double next = (df > 0.0) ? theta - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // Newton left the bracket
        const double step = std::fabs(next - theta);
        theta = next;
        if (std::fabs(f) <= tol && step <= 1e-12) break;
        if (hi - lo <= 1e-15) break;  // bracket exhausted at double precision
    }
    return theta;
}

// Embedding of polar angles into R^{d+1}; output has unit norm.
inline CartesianPoint to_cartesian(int dim, const PolarPoint& angles) {
    require_dimension(dim);
    if (static_cast<int>(angles.size()) != dim)
        throw std::domain_error("to_cartesian: angle count does not match dimension");
    CartesianPoint x(dim + 1);
    double sin_chain = 1.0;
    for (int j = 0; j + 1 < dim; ++j) {
        x[j] = sin_chain * std::cos(angles[j]);
        sin_chain *= std::sin(angles[j]);
    }
    x[dim - 1] = sin_chain * std::cos(angles[dim - 1]);
    x[dim] = sin_chain * std::sin(angles[dim - 1]);
    return x;
}

inline double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Inverse of to_cartesian.  Colatitudes via atan2(tail norm, leading
// coordinate), so poles land exactly on 0 or pi; once a tail norm is
// zero every remaining angle is 0 by convention, which makes round
// trips deterministic.
inline PolarPoint from_cartesian(int dim, const CartesianPoint& x) {
    require_dimension(dim);
    if (static_cast<int>(x.size()) != dim + 1)
        throw std::domain_error("from_cartesian: coordinate count does not match dimension");
    if (std::fabs(norm(x) - 1.0) > 1e-9)
        throw std::domain_error("from_cartesian: input is not a unit vector");

    // tail[j] = ||x_{j+1}, ..., x_d||, accumulated back to front.
    std::vector<double> tail(dim + 1, 0.0);
    for (int j = dim - 1; j >= 0; --j) tail[j] = std::hypot(x[j + 1], tail[j + 1]);

    PolarPoint angles(dim, 0.0);
    for (int j = 0; j + 1 < dim; ++j) {
        if (tail[j] == 0.0) {
            angles[j] = (x[j] >= 0.0) ? 0.0 : pi;
            return angles;  // remaining angles stay 0
        }
        angles[j] = std::atan2(tail[j], x[j]);
    }
    if (tail[dim - 1] == 0.0 && x[dim - 1] == 0.0) return angles;
    double az = std::atan2(x[dim], x[dim - 1]);
    if (az < 0.0) az += two_pi;
    if (az >= two_pi) az = 0.0;  // guard against rounding up from just below zero
    angles[dim - 1] = az;
    return angles;
}

// Euclidean chord length between two unit vectors.
inline double chord_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Geodesic (angular) distance between unit vectors, robust near 0 and pi.
inline double angular_distance(std::span<const double> a, std::span<const double> b) {
    return 2.0 * std::asin(std::min(1.0, 0.5 * chord_distance(a, b)));
}

// Chord subtended by an angle.
inline double chord_of_angle(double angle) { return 2.0 * std::sin(0.5 * angle); }

}  // namespace eqsp
