#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "eqsp/compare.hpp"
#include "eqsp/serialize.hpp"
#include "oracles.hpp"

using namespace eqsp;

TEST_CASE("random uniform: unit norms, determinism, equidistribution") {
    const CodeSet a = random_uniform(2, 500, 42);
    const CodeSet b = random_uniform(2, 500, 42);
    REQUIRE(a.size() == 500);
    CHECK(a.coords == b.coords);  // same seed, identical set
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::fabs(norm(a[i]) - 1.0) <= 1e-12);
    CHECK(random_uniform(2, 500, 43).coords != a.coords);

    // chi-square over the equal-area regions of EQ(2,100)
    const RegionTree tree = eq_partition({2, 100});
    const CodeSet big = random_uniform(2, 20000, 7);
    std::vector<long long> counts(100, 0);
    for (std::size_t i = 0; i < big.size(); ++i)
        ++counts[lookup(tree, CartesianPoint(big[i].begin(), big[i].end()))];
    const double expected = 200.0;
    double chi = 0.0;
    for (long long c : counts) chi += (c - expected) * (c - expected) / expected;
    CHECK(chi < oracle::chi_square_quantile(99, 0.999));

    CHECK_THROWS_AS(random_uniform(0, 5, 0), std::domain_error);
    CHECK_THROWS_AS(random_uniform(2, 0, 0), std::domain_error);
}

TEST_CASE("spiral points: degenerate N=2, norms, energy next to EQP") {
    const CodeSet two = spiral_points(2);
    REQUIRE(two.size() == 2);
    CHECK(chord_distance(two[0], two[1]) > 1.9);  // near-antipodal pair

    const CodeSet sp = spiral_points(400);
    for (std::size_t i = 0; i < sp.size(); ++i) REQUIRE(std::fabs(norm(sp[i]) - 1.0) <= 1e-12);

    const double e_spiral = log_energy(sp).value;
    const double e_eqp = log_energy(eq_points(eq_partition({2, 400}))).value;
    CHECK(std::fabs(e_spiral - e_eqp) <= 0.01);

    CHECK_THROWS_AS(spiral_points(1), std::domain_error);
}

TEST_CASE("fibonacci points: norms, separation, discrepancy decay") {
    const CodeSet fib = fibonacci_points(400);
    REQUIRE(fib.size() == 400);
    for (std::size_t i = 0; i < fib.size(); ++i) REQUIRE(std::fabs(norm(fib[i]) - 1.0) <= 1e-12);

    const double ratio_fib = min_distance(fib) * 20.0;
    const double ratio_eqp = min_distance(eq_points(eq_partition({2, 400}))) * 20.0;
    CHECK(ratio_fib >= 0.5 * ratio_eqp);

    double last = 2.0;
    for (long long n : {100LL, 400LL, 1600LL}) {
        const double disc = cap_discrepancy(fibonacci_points(n), 10000, 0);
        CHECK(disc < last);
        last = disc;
    }
}

TEST_CASE("halton points: the mapped first point and input validation") {
    const CodeSet h = halton_mapped(10);
    // k = 1: u = 1/2, v = 1/3 -> z = 0, phi = 2 pi / 3
    CHECK(h[0][0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(h[0][1] == doctest::Approx(std::cos(two_pi / 3.0)).epsilon(1e-14));
    CHECK(h[0][2] == doctest::Approx(std::sin(two_pi / 3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(halton_mapped(10, 4, 3), std::invalid_argument);   // non-prime
    CHECK_THROWS_AS(halton_mapped(10, 3, 3), std::invalid_argument);   // equal
    CHECK_THROWS_AS(halton_mapped(0), std::domain_error);

    // spread sanity: histogram over EQ(2,50) far more even than a
    // degenerate all-same-point set
    const RegionTree tree = eq_partition({2, 50});
    const CodeSet big = halton_mapped(1000);
    for (std::size_t i = 0; i < big.size(); ++i) REQUIRE(std::fabs(norm(big[i]) - 1.0) <= 1e-12);
    std::vector<long long> counts(50, 0);
    for (std::size_t i = 0; i < big.size(); ++i)
        ++counts[lookup(tree, CartesianPoint(big[i].begin(), big[i].end()))];
    long long worst = 0;
    for (long long c : counts) worst = std::max(worst, std::llabs(c - 20));
    CHECK(worst < 980);  // degenerate set deviates by N - 20
    CHECK(worst < 20);   // and the low-discrepancy set stays near the mean
}

TEST_CASE("halton discrepancy vs fibonacci (expected direction, not a gate)") {
    const double h = cap_discrepancy(halton_mapped(1000), 10000, 0);
    const double f = cap_discrepancy(fibonacci_points(1000), 10000, 0);
    WARN_MESSAGE(h > f, "expected halton(1000) above fibonacci(1000), got ", h, " vs ", f);
}

TEST_CASE("directional rankings at N = 400") {
    const double e_eqp = log_energy(eq_points(eq_partition({2, 400}))).value;
    const double e_spiral = log_energy(spiral_points(400)).value;
    CHECK(std::fabs(e_eqp - e_spiral) <= 0.01);
    double random_avg = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double e_rand = log_energy(random_uniform(2, 400, seed)).value;
        CHECK(e_eqp < e_rand);  // every seed loses to both constructions
        CHECK(e_spiral < e_rand);
        random_avg += e_rand;
    }
    random_avg /= 10.0;
    CHECK(e_eqp < random_avg);
    CHECK(e_spiral < random_avg);
}

TEST_CASE("EQP separation beats random uniform across the sweep") {
    for (long long n : {100LL, 400LL}) {
        const double scale = std::sqrt(static_cast<double>(n));
        const double eqp = min_distance(eq_points(eq_partition({2, n}))) * scale;
        const double rnd = min_distance(random_uniform(2, n, 0)) * scale;
        CHECK(eqp > rnd);
    }
}

TEST_CASE("compare: cardinality, determinism, bad input") {
    const std::vector<std::string> gens{"eqp", "spiral", "fibonacci"};
    const std::vector<long long> sweep{100, 400};
    const std::vector<std::string> metrics{"min_distance", "log_energy"};
    const auto rows = compare(2, gens, sweep, metrics, 0);
    REQUIRE(rows.size() == 12);
    for (const auto& row : rows) CHECK(row.seed == 0);
    CHECK(rows[0].generator == "eqp");
    CHECK(rows[0].n == 100);
    CHECK(rows[0].metric == "min_distance");

    const auto again = compare(2, gens, sweep, metrics, 0);
    CHECK(to_csv(rows) == to_csv(again));  // byte-identical rerun

    CHECK_THROWS_AS(make_code("spiral", 3, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_code("voronoi", 2, 10, 0), std::invalid_argument);
    const std::vector<std::string> bad_metric{"curvature"};
    CHECK_THROWS_AS(compare(2, gens, sweep, bad_metric, 0), std::invalid_argument);
}

TEST_CASE("compare supports riesz metrics with an s suffix") {
    const std::vector<std::string> gens{"eqp"};
    const std::vector<long long> sweep{64};
    const std::vector<std::string> metrics{"riesz_1", "riesz_2"};
    const auto rows = compare(2, gens, sweep, metrics, 0);
    REQUIRE(rows.size() == 2);
    const CodeSet code = eq_points(eq_partition({2, 64}));
    CHECK(rows[0].value == riesz_energy(code, 1.0).value);
    CHECK(rows[1].value == riesz_energy(code, 2.0).value);
}
