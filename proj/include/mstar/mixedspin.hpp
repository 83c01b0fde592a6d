#pragma once

// Decomposition of a pure (s, 1/2) product-space state into its
// spin-(s+1/2) and spin-(s-1/2) coupled components with nonnegative
// weights, the pseudo-spin-1/2 star formed by those weights, and the
// assembled (4s+1)-star representation.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "mstar/majorana.hpp"
#include "mstar/spinops.hpp"

namespace mstar {

// Below this weight a coupled component is considered absent: its
// amplitude direction is pure rounding noise and its stars are reported
// as undefined instead of fabricated.
inline constexpr double kZeroWeightTol = 1e-15;

inline constexpr double kStateNormTol = 1e-10;

/// Pure state of the (s, 1/2) product space in the uncoupled basis.
/// d_down[n] multiplies |n>_1|0>_2 and d_up[n] multiplies |n>_1|1>_2.
struct MixedSpinState {
    int twice_s = 1;
    ComplexVector d_down;
    ComplexVector d_up;

    MixedSpinState() = default;
    MixedSpinState(int twice, ComplexVector down, ComplexVector up)
        : twice_s(twice), d_down(std::move(down)), d_up(std::move(up)) {
        if (twice_s < 1) {
            throw std::invalid_argument("mixed-spin state requires twice_s >= 1");
        }
        if (d_down.size() != twice_s + 1 || d_up.size() != twice_s + 1) {
            throw std::invalid_argument("amplitude vectors must have length 2s+1");
        }
    }

    double norm() const { return std::sqrt(d_down.squaredNorm() + d_up.squaredNorm()); }

    /// Flattens to the k = 2n + m uncoupled ordering.
    ComplexVector to_uncoupled() const {
        ComplexVector v(2 * (twice_s + 1));
        for (int n = 0; n <= twice_s; ++n) {
            v[uncoupled_index(n, 0)] = d_down[n];
            v[uncoupled_index(n, 1)] = d_up[n];
        }
        return v;
    }

    static MixedSpinState from_uncoupled(int twice_s, const ComplexVector& v) {
        if (v.size() != 2 * (twice_s + 1)) {
            throw std::invalid_argument("uncoupled vector has wrong dimension");
        }
        ComplexVector down(twice_s + 1), up(twice_s + 1);
        for (int n = 0; n <= twice_s; ++n) {
            down[n] = v[uncoupled_index(n, 0)];
            up[n] = v[uncoupled_index(n, 1)];
        }
        return MixedSpinState(twice_s, std::move(down), std::move(up));
    }
};

/// Coupled-basis split |psi> = c_upper |psi>_{s+1/2} + c_lower |psi>_{s-1/2}.
/// Weights are the nonnegative norms of the raw component vectors; all
/// relative phase lives inside the unit-norm component amplitudes. A
/// component with zero weight keeps an all-zero amplitude vector.
struct Decomposition {
    PureSpinState upper;  // twice_j = 2s+1, amplitudes E_n for n = 0..2s+1
    PureSpinState lower;  // twice_j = 2s-1; paper index n = 1..2s stored from 0
    double c_upper = 0.0;
    double c_lower = 0.0;
};

inline Decomposition decompose(const MixedSpinState& state) {
    const double norm = state.norm();
    if (norm == 0.0) {
        throw std::domain_error("zero state");
    }
    if (std::abs(norm - 1.0) > kStateNormTol) {
        throw std::invalid_argument("mixed-spin state must be normalized");
    }
    const int ts = state.twice_s;
    const double root_dim = std::sqrt(double(ts + 1));
    auto d_up_at = [&state, ts](int m) {
        return (m >= 0 && m <= ts) ? state.d_up[m] : Complex(0, 0);
    };
    auto d_down_at = [&state, ts](int n) {
        return (n >= 0 && n <= ts) ? state.d_down[n] : Complex(0, 0);
    };

    // E_n = (D_{n-1,1} sqrt(n) + D_{n,0} sqrt(2s-n+1)) / sqrt(2s+1); the
    // n = 0 and n = 2s+1 cases reduce to the one-dimensional subspaces.
    ComplexVector e(ts + 2);
    for (int n = 0; n <= ts + 1; ++n) {
        e[n] = (d_up_at(n - 1) * std::sqrt(double(n)) +
                d_down_at(n) * std::sqrt(double(ts - n + 1))) /
               root_dim;
    }
    // F_n = (-D_{n-1,1} sqrt(2s-n+1) + D_{n,0} sqrt(n)) / sqrt(2s+1), n = 1..2s.
    ComplexVector f(ts);
    for (int n = 1; n <= ts; ++n) {
        f[n - 1] = (-d_up_at(n - 1) * std::sqrt(double(ts - n + 1)) +
                    d_down_at(n) * std::sqrt(double(n))) /
                   root_dim;
    }

    Decomposition out;
    out.c_upper = e.norm();
    out.c_lower = f.norm();
    if (out.c_upper > kZeroWeightTol) e /= out.c_upper;
    else e.setZero();
    if (out.c_lower > kZeroWeightTol) f /= out.c_lower;
    else f.setZero();
    out.upper = PureSpinState(ts + 1, std::move(e));
    out.lower = PureSpinState(ts - 1, std::move(f));
    return out;
}

/// Exact inverse of decompose: maps coupled amplitudes back to the
/// uncoupled product basis.
inline MixedSpinState compose(const Decomposition& d) {
    const int ts = d.upper.twice_j - 1;
    if (ts < 1 || d.lower.twice_j != ts - 1) {
        throw std::invalid_argument("decomposition has inconsistent component dimensions");
    }
    if (d.c_upper < 0.0 || d.c_lower < 0.0 ||
        std::abs(d.c_upper * d.c_upper + d.c_lower * d.c_lower - 1.0) > kStateNormTol) {
        throw std::invalid_argument("component weights must satisfy c_upper^2 + c_lower^2 = 1");
    }
    const double root_dim = std::sqrt(double(ts + 1));
    auto e_at = [&d](int n) { return d.c_upper * d.upper.amplitudes[n]; };
    auto f_at = [&d, ts](int n) {
        return (n >= 1 && n <= ts) ? d.c_lower * d.lower.amplitudes[n - 1] : Complex(0, 0);
    };

    ComplexVector down(ts + 1), up(ts + 1);
    for (int n = 0; n <= ts; ++n) {
        down[n] = (e_at(n) * std::sqrt(double(ts - n + 1)) + f_at(n) * std::sqrt(double(n))) /
                  root_dim;
    }
    for (int n = 1; n <= ts + 1; ++n) {
        up[n - 1] = (e_at(n) * std::sqrt(double(n)) - f_at(n) * std::sqrt(double(ts - n + 1))) /
                    root_dim;
    }
    return MixedSpinState(ts, std::move(down), std::move(up));
}

/// Star of the pseudo spin-1/2 built from the component weights,
/// z = c_lower / c_upper. Nonnegative weights pin phi to 0; all upper
/// weight is the north pole, all lower weight the south pole.
inline Star pseudo_spin_star(const Decomposition& d) {
    if (d.c_upper <= kZeroWeightTol) {
        return Star{kPi, 0.0, 1};
    }
    return Star{2.0 * std::atan(d.c_lower / d.c_upper), 0.0, 1};
}

/// The full (4s+1)-star picture: 2s+1 stars of the spin-(s+1/2)
/// component, 2s-1 stars of the spin-(s-1/2) component, and the pseudo
/// star. A component whose weight vanishes has no defined stars.
struct FullRepresentation {
    std::optional<StarSet> upper_stars;
    std::optional<StarSet> lower_stars;
    Star pseudo_star;

    int total_multiplicity() const {
        int total = pseudo_star.multiplicity;
        if (upper_stars) total += upper_stars->total_multiplicity();
        if (lower_stars) total += lower_stars->total_multiplicity();
        return total;
    }
};

inline FullRepresentation full_representation(const MixedSpinState& state) {
    const Decomposition d = decompose(state);
    FullRepresentation rep;
    rep.pseudo_star = pseudo_spin_star(d);
    if (d.c_upper > kZeroWeightTol) {
        rep.upper_stars = solve_stars(d.upper);
    }
    if (d.c_lower > kZeroWeightTol) {
        rep.lower_stars = solve_stars(d.lower);  // empty set when 2s-1 = 0
    }
    return rep;
}

}  // namespace mstar
