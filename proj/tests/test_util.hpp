#pragma once

// Shared helpers for the test suites: seeded random states and small
// comparison utilities.

#include <random>

#include "mstar/majorana.hpp"
#include "mstar/mixedspin.hpp"

namespace mstar_test {

inline mstar::ComplexVector random_complex_vector(std::mt19937_64& rng, int size) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    mstar::ComplexVector v(size);
    for (int i = 0; i < size; ++i) v[i] = mstar::Complex(gauss(rng), gauss(rng));
    return v;
}

inline mstar::PureSpinState random_pure_state(std::mt19937_64& rng, int twice_j) {
    mstar::ComplexVector v = random_complex_vector(rng, twice_j + 1);
    return mstar::PureSpinState(twice_j, v / v.norm());
}

inline mstar::MixedSpinState random_mixed_state(std::mt19937_64& rng, int twice_s) {
    mstar::ComplexVector down = random_complex_vector(rng, twice_s + 1);
    mstar::ComplexVector up = random_complex_vector(rng, twice_s + 1);
    const double norm = std::sqrt(down.squaredNorm() + up.squaredNorm());
    return mstar::MixedSpinState(twice_s, down / norm, up / norm);
}

/// Relative distance between coefficient vectors after the complex
/// scaling that best maps b onto a.
inline double scaled_relative_error(const mstar::ComplexVector& a, const mstar::ComplexVector& b) {
    const mstar::Complex scale = b.dot(a) / b.squaredNorm();
    return (a - scale * b).norm() / a.norm();
}

}  // namespace mstar_test
