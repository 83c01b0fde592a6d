#pragma once

// Closed-form star positions and example state families for the
// (1/2, 1/2) and (1, 1/2) systems. These are independent of the numeric
// decomposition/root-finding pipeline and serve as its ground truth.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "mstar/dynamics.hpp"
#include "mstar/majorana.hpp"
#include "mstar/mixedspin.hpp"

namespace mstar {

struct HalfHalfParams {
    double varphi = 0.0;
    double delta = 0.0;
    double t = 0.0;
};

struct OneHalfParams {
    double varphi = 0.0;
    double delta = 0.0;
    double t = 0.0;
};

/// exp(-i H1 t) (cos(phi)|up> + sin(phi)|down>) x (sin(phi)|up> + cos(phi)|down>).
/// At t = 0 the uncoupled amplitudes are a = cos sin on |up,up>,
/// b = sin^2 on |down,up>, c = cos^2 on |up,down>, d = sin cos on
/// |down,down>.
inline MixedSpinState example_state_half_half(const HalfHalfParams& p) {
    const double c = std::cos(p.varphi);
    const double s = std::sin(p.varphi);
    ComplexVector down(2), up(2);
    down[0] = s * c;  // |down,down>
    down[1] = c * c;  // |up,down>
    up[0] = s * s;    // |down,up>
    up[1] = c * s;    // |up,up>
    MixedSpinState state(1, std::move(down), std::move(up));
    if (p.t == 0.0) return state;
    return evolve(build_h1({p.delta}), p.t, state);
}

/// The two analogous-triplet stars of the (1/2, 1/2) family from the
/// closed-form quadratic
///   z^2 e^{-i delta t} sin cos - z e^{i(delta-2)t} + e^{-i delta t} sin cos = 0.
/// The product of the roots is 1, which forces theta_+ + theta_- = pi
/// and phi_+ + phi_- = 0 (mod 2pi). Throws when sin(phi)cos(phi)
/// vanishes and the quadratic degenerates.
inline StarSet triplet_stars_closed_form(const HalfHalfParams& p) {
    const double sc = std::sin(p.varphi) * std::cos(p.varphi);
    if (std::abs(sc) < 1e-12) {
        throw std::domain_error("degenerate closed form; use numeric pipeline");
    }
    const Complex a = std::polar(sc, -p.delta * p.t);
    const Complex b = -std::polar(1.0, (p.delta - 2.0) * p.t);
    const Complex c = a;
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex z_plus = (-b + disc) / (2.0 * a);
    const Complex z_minus = (-b - disc) / (2.0 * a);

    StarSet out{2, {}};
    for (Complex z : {z_plus, z_minus}) {
        const auto [theta, phi] = z_to_sphere(z);
        out.stars.push_back({theta, phi, 1});
    }
    std::sort(out.stars.begin(), out.stars.end(), [](const Star& x, const Star& y) {
        return x.theta != y.theta ? x.theta < y.theta : x.phi < y.phi;
    });
    return out;
}

/// Pseudo-spin star of the (1/2, 1/2) family,
/// z = sqrt(cos^2(2 phi) / (sin^2(2 phi) + 1)): always on the north half
/// of the prime meridian and independent of t and delta.
inline Star pseudo_star_closed_form_half_half(double varphi) {
    const double c2 = std::cos(2.0 * varphi);
    const double s2 = std::sin(2.0 * varphi);
    const double z = std::sqrt(c2 * c2 / (s2 * s2 + 1.0));
    return Star{2.0 * std::atan(z), 0.0, 1};
}

/// exp(-i H2 t) (cos(phi)/sqrt2 |1> + 1/sqrt2 |0> + sin(phi)/sqrt2 |-1>)
///            x (cos(phi)|up> + sin(phi)|down>) for the (1, 1/2) system.
inline MixedSpinState example_state_one_half(const OneHalfParams& p) {
    const double c = std::cos(p.varphi);
    const double s = std::sin(p.varphi);
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    // Spin-1 basis |1>, |0>, |-1> corresponds to n = 2, 1, 0.
    const double large[3] = {s * inv_root2, inv_root2, c * inv_root2};
    ComplexVector down(3), up(3);
    for (int n = 0; n < 3; ++n) {
        down[n] = large[n] * s;
        up[n] = large[n] * c;
    }
    MixedSpinState state(2, std::move(down), std::move(up));
    if (p.t == 0.0) return state;
    return evolve(build_h2(SpinMagnitude(2), {p.delta}), p.t, state);
}

}  // namespace mstar
