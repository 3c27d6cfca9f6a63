#pragma once

#include <cmath>
#include <random>

#include "c2flow/grid.hpp"
#include "c2flow/nshj.hpp"

namespace c2flow::test {

inline Field2D random_field(const GridSpec& g, std::mt19937& rng, double lo = -1.0,
                            double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Field2D f(g);
    for (size_t i = 0; i < f.size(); ++i)
        f[i] = dist(rng);
    return f;
}

inline FluidState random_state(const GridSpec& g, std::mt19937& rng) {
    // rho stays positive, the rest is O(1)
    return {random_field(g, rng, 0.5, 1.5), random_field(g, rng), random_field(g, rng),
            random_field(g, rng)};
}

/// Closed-form solution of x' = -a x + b x^2 (test oracle, independent of the
/// marching code): x(t) = a x0 e^{-at} / (a - b x0 (1 - e^{-at})).
inline double unforced_logistic_exact(double x0, double a, double b, double t) {
    const double decay = std::exp(-a * t);
    return a * x0 * decay / (a - b * x0 * (1.0 - decay));
}

} // namespace c2flow::test
