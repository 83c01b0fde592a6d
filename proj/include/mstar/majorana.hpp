#pragma once

// Majorana star construction for a single pure spin-j state: builds the
// star polynomial from the amplitude vector, solves for its roots
// (including roots at infinity from degree deficits), and maps roots to
// points on the Bloch sphere.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mstar/spinops.hpp"

namespace mstar {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Coefficients whose magnitude falls below this fraction of the largest
// one are treated as vanished when trimming the star polynomial.
inline constexpr double kCoeffTrimRel = 1e-13;

// Roots closer than this in the chordal metric are merged into one star.
inline constexpr double kStarClusterTol = 1e-8;

/// Amplitudes C^(n), n = 0..2j, of a pure spin-j state in the |n> = |-j+n>
/// basis. Star positions are scale invariant, so unit norm is not required
/// here; only a nonzero vector is meaningful.
struct PureSpinState {
    int twice_j = 0;
    ComplexVector amplitudes;

    PureSpinState() = default;
    PureSpinState(int twice, ComplexVector amps) : twice_j(twice), amplitudes(std::move(amps)) {
        if (twice_j < 0) {
            throw std::invalid_argument("twice_j must be nonnegative");
        }
        if (amplitudes.size() != twice_j + 1) {
            throw std::invalid_argument("amplitude vector must have length 2j+1");
        }
    }
};

/// One Bloch-sphere point. theta in [0, pi], phi canonicalized to
/// [0, 2pi) with phi = 0 at either pole.
struct Star {
    double theta = 0.0;
    double phi = 0.0;
    int multiplicity = 1;
};

struct StarSet {
    int twice_j = 0;
    std::vector<Star> stars;  // canonical order: ascending (theta, phi)

    int total_multiplicity() const {
        int total = 0;
        for (const Star& s : stars) total += s.multiplicity;
        return total;
    }
};

/// Exact binomial coefficient; throws on uint64 overflow (2j up to ~60
/// is comfortably in range).
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > UINT64_MAX) {
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

/// Star polynomial coefficients: a_n = (-1)^n sqrt(binom(2j, n)) C^(n).
/// The multiset of roots (with roots at infinity for degree deficits) is
/// the Majorana constellation of the state.
inline ComplexVector star_polynomial(const PureSpinState& state) {
    const int deg = state.twice_j;
    ComplexVector coeffs(deg + 1);
    for (int n = 0; n <= deg; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        coeffs[n] = sign * std::sqrt(double(binomial(deg, n))) * state.amplitudes[n];
    }
    return coeffs;
}

/// Root-to-sphere map z = tan(theta/2) e^{i phi}. z = 0 is the north
/// pole; the south pole theta = pi is reserved for roots at infinity.
inline std::pair<double, double> z_to_sphere(Complex z) {
    const double mag = std::abs(z);
    double theta = 2.0 * std::atan(mag);
    if (theta == 0.0 || theta == kPi) {
        return {theta, 0.0};
    }
    double phi = std::arg(z);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;  // guard against rounding at the seam
    return {theta, phi};
}

/// Inverse of z_to_sphere for finite stars (theta < pi).
inline Complex sphere_to_z(double theta, double phi) {
    return std::polar(std::tan(0.5 * theta), phi);
}

inline std::array<double, 3> sphere_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Great-circle (angular) distance between two sphere points, accurate
/// for both tiny and near-antipodal separations.
inline double great_circle_distance(double theta1, double phi1, double theta2, double phi2) {
    const std::array<double, 3> u = sphere_vector(theta1, phi1);
    const std::array<double, 3> v = sphere_vector(theta2, phi2);
    const std::array<double, 3> c = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                     u[0] * v[1] - u[1] * v[0]};
    const double cross = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    return std::atan2(cross, dot);
}

inline double great_circle_distance(const Star& a, const Star& b) {
    return great_circle_distance(a.theta, a.phi, b.theta, b.phi);
}

namespace detail {

// A root of the star polynomial on the extended complex plane.
struct ProjectiveRoot {
    Complex z{0.0, 0.0};
    bool at_infinity = false;
};

// Chordal metric |z1-z2| / sqrt((1+|z1|^2)(1+|z2|^2)), extended to the
// point at infinity; equals half the Euclidean distance of the sphere
// images.
inline double chordal_distance(const ProjectiveRoot& a, const ProjectiveRoot& b) {
    if (a.at_infinity && b.at_infinity) return 0.0;
    if (a.at_infinity) return 1.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.at_infinity) return 1.0 / std::sqrt(1.0 + std::norm(a.z));
    return std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

inline void horner(const ComplexVector& coeffs, Complex z, Complex& p, Complex& dp) {
    p = Complex(0.0, 0.0);
    dp = Complex(0.0, 0.0);
    for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) {
        dp = dp * z + p;
        p = p * z + coeffs[n];
    }
}

// Newton refinement on the full coefficient list, keeping the iterate
// with the smallest residual. Multiple roots converge linearly, so a
// generous iteration cap is used; the work is negligible at our degrees.
inline Complex polish_root(const ComplexVector& coeffs, Complex z) {
    Complex p, dp;
    horner(coeffs, z, p, dp);
    Complex best = z;
    double best_res = std::abs(p);
    for (int iter = 0; iter < 40; ++iter) {
        if (dp == Complex(0.0, 0.0)) break;
        const Complex step = p / dp;
        z -= step;
        horner(coeffs, z, p, dp);
        const double res = std::abs(p);
        if (res < best_res) {
            best = z;
            best_res = res;
        }
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return best;
}

// Eigenvalues of the monic companion matrix of sum_n coeffs[n] z^n,
// coeffs.back() != 0.
inline std::vector<Complex> companion_roots(const ComplexVector& coeffs) {
    const Eigen::Index deg = coeffs.size() - 1;
    ComplexMatrix companion = ComplexMatrix::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
    std::vector<Complex> roots(deg);
    for (Eigen::Index i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()[i];
    return roots;
}

}  // namespace detail

/// Finds all 2j stars of the star polynomial, counting multiplicity.
/// Vanishing leading coefficients contribute a star at the south pole
/// ("roots at infinity"); near-coincident roots are merged via the
/// chordal clustering tolerance. Throws std::domain_error on an all-zero
/// coefficient list.
inline StarSet solve_stars(const ComplexVector& coeffs, int twice_j) {
    if (coeffs.size() != twice_j + 1) {
        throw std::invalid_argument("coefficient list must have length 2j+1");
    }
    double max_mag = 0.0;
    for (Eigen::Index n = 0; n < coeffs.size(); ++n) max_mag = std::max(max_mag, std::abs(coeffs[n]));
    if (max_mag == 0.0) {
        throw std::domain_error("zero state");
    }
    const double trim = kCoeffTrimRel * max_mag;
    int degree = twice_j;
    while (degree > 0 && std::abs(coeffs[degree]) <= trim) --degree;
    int lowest = 0;
    while (lowest < degree && std::abs(coeffs[lowest]) <= trim) ++lowest;

    std::vector<detail::ProjectiveRoot> roots;
    roots.reserve(twice_j);
    for (int i = degree; i < twice_j; ++i) roots.push_back({Complex(0, 0), true});
    for (int i = 0; i < lowest; ++i) roots.push_back({Complex(0, 0), false});
    if (degree > lowest) {
        ComplexVector inner = coeffs.segment(lowest, degree - lowest + 1);
        for (Complex z : detail::companion_roots(inner)) {
            roots.push_back({detail::polish_root(coeffs, z), false});
        }
    }

    // Union-find clustering in the chordal metric.
    const int count = static_cast<int>(roots.size());
    std::vector<int> parent(count);
    for (int i = 0; i < count; ++i) parent[i] = i;
    auto find = [&parent](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            if (detail::chordal_distance(roots[i], roots[j]) < kStarClusterTol) {
                parent[find(i)] = find(j);
            }
        }
    }

    StarSet out{twice_j, {}};
    for (int rep = 0; rep < count; ++rep) {
        if (find(rep) != rep) continue;
        std::vector<int> members;
        for (int i = 0; i < count; ++i) {
            if (find(i) == rep) members.push_back(i);
        }
        Star star;
        star.multiplicity = static_cast<int>(members.size());
        if (members.size() == 1) {
            const detail::ProjectiveRoot& r = roots[members[0]];
            if (r.at_infinity) {
                star.theta = kPi;
                star.phi = 0.0;
            } else {
                std::tie(star.theta, star.phi) = z_to_sphere(r.z);
            }
        } else {
            // Merged cluster: average the unit sphere vectors.
            std::array<double, 3> mean = {0, 0, 0};
            for (int i : members) {
                std::array<double, 3> v{0, 0, -1};
                if (!roots[i].at_infinity) {
                    const auto [theta, phi] = z_to_sphere(roots[i].z);
                    v = sphere_vector(theta, phi);
                }
                mean[0] += v[0];
                mean[1] += v[1];
                mean[2] += v[2];
            }
            const double len = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
            if (len == 0.0) {
                const auto [theta, phi] = z_to_sphere(roots[members[0]].z);
                star.theta = theta;
                star.phi = phi;
            } else {
                star.theta = std::atan2(std::hypot(mean[0], mean[1]), mean[2]);
                star.phi = std::atan2(mean[1], mean[0]);
                if (star.phi < 0.0) star.phi += kTwoPi;
                if (star.phi >= kTwoPi) star.phi = 0.0;
                if (star.theta == 0.0 || star.theta == kPi) star.phi = 0.0;
            }
        }
        out.stars.push_back(star);
    }
    std::sort(out.stars.begin(), out.stars.end(), [](const Star& a, const Star& b) {
        return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
    });
    return out;
}

/// Convenience: the star set of a pure spin-j state.
inline StarSet solve_stars(const PureSpinState& state) {
    return solve_stars(star_polynomial(state), state.twice_j);
}

/// Multiplicity sitting exactly at the south pole; for a solve_stars
/// result this is the degree deficit of the star polynomial.
inline int infinity_multiplicity(const StarSet& set) {
    int total = 0;
    for (const Star& s : set.stars) {
        if (s.theta == kPi) total += s.multiplicity;
    }
    return total;
}

/// Vieta round trip: expands the monic polynomial whose roots are the
/// finite stars. degree_deficit stars at the south pole are consumed as
/// roots at infinity and reappear as vanished leading coefficients. The
/// result is proportional to the star polynomial that produced the set.
inline ComplexVector reconstruct_coefficients(const StarSet& set, int degree_deficit) {
    if (degree_deficit < 0 || degree_deficit > infinity_multiplicity(set)) {
        throw std::invalid_argument("degree deficit inconsistent with south-pole multiplicity");
    }
    std::vector<Complex> roots;
    int to_drop = degree_deficit;
    for (const Star& s : set.stars) {
        int mult = s.multiplicity;
        if (s.theta == kPi && to_drop > 0) {
            const int drop = std::min(mult, to_drop);
            mult -= drop;
            to_drop -= drop;
        }
        for (int i = 0; i < mult; ++i) roots.push_back(sphere_to_z(s.theta, s.phi));
    }
    ComplexVector coeffs = ComplexVector::Zero(set.twice_j + 1);
    coeffs[0] = 1.0;
    int current = 0;
    for (Complex r : roots) {
        // multiply running polynomial by (z - r)
        ++current;
        for (int n = current; n >= 1; --n) coeffs[n] = coeffs[n - 1] - r * coeffs[n];
        coeffs[0] *= -r;
    }
    return coeffs;
}

}  // namespace mstar
