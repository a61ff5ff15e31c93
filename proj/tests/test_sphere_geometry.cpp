#include <doctest.h>

#include <cmath>
#include <limits>

#include "eqsp/incomplete_beta.hpp"
#include "eqsp/rng.hpp"
#include "eqsp/sphere_geometry.hpp"
#include "oracles.hpp"

using namespace eqsp;

TEST_CASE("sphere areas of the low dimensions") {
    CHECK(sphere_area(1) == doctest::Approx(two_pi).epsilon(1e-14));
    CHECK(sphere_area(2) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-13));
    CHECK_THROWS_AS(sphere_area(0), std::domain_error);
}

TEST_CASE("regularized incomplete beta basics") {
    CHECK(regularized_incomplete_beta(0.0, 2.0, 2.0) == 0.0);
    CHECK(regularized_incomplete_beta(1.0, 2.0, 2.0) == 1.0);
    // I_x(1,1) = x
    CHECK(regularized_incomplete_beta(0.37, 1.0, 1.0) == doctest::Approx(0.37).epsilon(1e-14));
    // I_x(1/2,1/2) = (2/pi) asin(sqrt(x))
    CHECK(regularized_incomplete_beta(0.2, 0.5, 0.5) ==
          doctest::Approx(2.0 / pi * std::asin(std::sqrt(0.2))).epsilon(1e-13));
    // symmetry I_x(a,a) + I_{1-x}(a,a) = 1
    for (double x : {0.1, 0.33, 0.48}) {
        const double a = 3.5;
        CHECK(regularized_incomplete_beta(x, a, a) + regularized_incomplete_beta(1.0 - x, a, a) ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("cap areas: hemispheres and the d=2 closed form") {
    CHECK(cap_area(2, 0.5 * pi) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(cap_area(3, 0.5 * pi) == doctest::Approx(pi * pi).epsilon(1e-14));
    CHECK(cap_area(2, pi / 3.0) == doctest::Approx(pi).epsilon(1e-14));  // 2pi(1-cos(pi/3))
    CHECK(cap_area(2, pi) == doctest::Approx(sphere_area(2)).epsilon(1e-14));
    CHECK_THROWS_AS(cap_area(2, -0.1), std::domain_error);
    CHECK_THROWS_AS(cap_area(2, pi + 0.1), std::domain_error);
}

TEST_CASE("cap areas agree with the defining integral for d = 1..8") {
    Rng rng(2024);
    for (int dim = 1; dim <= 8; ++dim) {
        for (int trial = 0; trial < 12; ++trial) {
            const double theta = rng.uniform(0.0, pi);
            const double expected = oracle::cap_area_quadrature(dim, theta);
            CHECK(cap_area(dim, theta) ==
                  doctest::Approx(expected).epsilon(1e-12).scale(sphere_area(dim)));
        }
        CHECK(cap_area(dim, pi) == doctest::Approx(sphere_area(dim)).epsilon(1e-13));
        CHECK(cap_area(dim, 0.5 * pi) == doctest::Approx(0.5 * sphere_area(dim)).epsilon(1e-13));
    }
}

TEST_CASE("cap_area is strictly increasing") {
    Rng rng(7);
    for (int dim = 1; dim <= 8; ++dim) {
        for (int trial = 0; trial < 40; ++trial) {
            double a = rng.uniform(0.0, pi);
            double b = rng.uniform(0.0, pi);
            if (a > b) std::swap(a, b);
            if (b - a < 1e-6) continue;
            CHECK(cap_area(dim, a) < cap_area(dim, b));
        }
    }
}

TEST_CASE("cap_colatitude inverts cap_area") {
    CHECK(cap_colatitude(2, 2.0 * pi) == doctest::Approx(0.5 * pi).epsilon(1e-14));
    CHECK(cap_colatitude(3, pi * pi) == doctest::Approx(0.5 * pi).epsilon(1e-12));
    // closed-form solve of 2pi(1-cos(theta)) = 4pi/33
    CHECK(cap_colatitude(2, 4.0 * pi / 33.0) ==
          doctest::Approx(std::acos(1.0 - 2.0 / 33.0)).epsilon(1e-14));
    CHECK(cap_colatitude(2, 0.0) == 0.0);
    CHECK(cap_colatitude(2, sphere_area(2)) == pi);
    CHECK_THROWS_AS(cap_colatitude(2, -0.5), std::domain_error);
    CHECK_THROWS_AS(cap_colatitude(2, 20.0 * pi), std::domain_error);

    Rng rng(11);
    for (int dim = 1; dim <= 8; ++dim) {
        const double omega = sphere_area(dim);
        for (int trial = 0; trial < 24; ++trial) {
            const double theta = rng.uniform(0.01, pi - 0.01);
            // Near the south pole in high dimensions the area is flat to
            // machine precision (the complement cap can be smaller than one
            // ulp of omega), so theta recovery is limited by binary64
            // rounding of the area value, not by the solver.
            const double floor =
                4.0 * omega * std::numeric_limits<double>::epsilon() / cap_area_derivative(dim, theta);
            const double tol = std::max(1e-10 * (1.0 + theta), floor);
            CHECK(std::fabs(cap_colatitude(dim, cap_area(dim, theta)) - theta) <= tol);
        }
        // round trip in the area variable, the contract of the inverse
        for (int trial = 0; trial < 24; ++trial) {
            const double area = rng.uniform(0.0, omega);
            const double theta = cap_colatitude(dim, area);
            CHECK(std::fabs(cap_area(dim, theta) - area) <= 1e-12 * omega);
        }
    }
}

TEST_CASE("polar/cartesian conversions: pinned values") {
    // north pole of S^2, azimuth degenerate
    auto x = to_cartesian(2, {0.0, 1.234});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(x[1]) < 1e-15);
    CHECK(std::fabs(x[2]) < 1e-15);

    x = to_cartesian(1, {0.5 * pi});
    CHECK(x[0] == doctest::Approx(0.0).scale(1).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));

    x = to_cartesian(2, {0.5 * pi, 0.5 * pi});
    CHECK(std::fabs(x[0]) < 1e-15);
    CHECK(std::fabs(x[1]) < 1e-15);
    CHECK(x[2] == doctest::Approx(1.0).epsilon(1e-15));

    auto p = from_cartesian(2, {1.0, 0.0, 0.0});
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 0.0);
    p = from_cartesian(2, {0.0, 1.0, 0.0});
    CHECK(p[0] == doctest::Approx(0.5 * pi).epsilon(1e-15));
    CHECK(p[1] == 0.0);

    CHECK_THROWS_AS(from_cartesian(2, {1.0, 1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(from_cartesian(2, {1.0, 0.0}), std::domain_error);
}

TEST_CASE("round trip of random unit vectors, d = 1..4") {
    Rng rng(42);
    for (int dim = 1; dim <= 4; ++dim) {
        for (int trial = 0; trial < 25000; ++trial) {
            const CartesianPoint x = rng.unit_vector(dim);
            const PolarPoint p = from_cartesian(dim, x);
            REQUIRE(static_cast<int>(p.size()) == dim);
            for (int j = 0; j + 1 < dim; ++j) {
                REQUIRE(p[j] >= 0.0);
                REQUIRE(p[j] <= pi);
            }
            REQUIRE(p[dim - 1] >= 0.0);
            REQUIRE(p[dim - 1] < two_pi);
            const CartesianPoint back = to_cartesian(dim, p);
            REQUIRE(std::fabs(norm(back) - 1.0) <= 1e-12);
            REQUIRE(chord_distance(x, back) <= 1e-12);
        }
    }
}

TEST_CASE("random polar points embed with unit norm") {
    Rng rng(5);
    for (int dim = 1; dim <= 4; ++dim) {
        for (int trial = 0; trial < 25000; ++trial) {
            PolarPoint p(dim);
            for (int j = 0; j + 1 < dim; ++j) p[j] = rng.uniform(0.0, pi);
            p[dim - 1] = rng.uniform(0.0, two_pi);
            REQUIRE(std::fabs(norm(to_cartesian(dim, p)) - 1.0) <= 1e-12);
        }
    }
}
