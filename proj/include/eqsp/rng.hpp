// Seeded random sampling with reproducible output: mt19937_64 raw draws
// mapped to doubles by hand (the standard distributions are
// implementation defined, the engine itself is not).

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "eqsp/sphere_geometry.hpp"

namespace eqsp {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller pair of independent standard normals.
    std::array<double, 2> gaussian_pair() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }

    // Uniform point on S^dim via normalized Gaussians.
    void unit_vector(int dim, std::span<double> out) {
        for (;;) {
            for (int i = 0; i + 1 < dim + 1; i += 2) {
                const auto g = gaussian_pair();
                out[i] = g[0];
                out[i + 1] = g[1];
            }
            if ((dim + 1) % 2 != 0) out[dim] = gaussian_pair()[0];
            const double n = norm(out.first(dim + 1));
            if (n > 1e-8) {
                for (int i = 0; i <= dim; ++i) out[i] /= n;
                return;
            }
        }
    }

    CartesianPoint unit_vector(int dim) {
        CartesianPoint x(dim + 1);
        unit_vector(dim, x);
        return x;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace eqsp
