#pragma once

// Named invariant checks over every module, run on deterministic seeded
// random inputs. Backs the `validate` CLI command; the test hooks allow
// fault injection to exercise the failure path.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mstar/closed_form.hpp"
#include "mstar/dynamics.hpp"
#include "mstar/majorana.hpp"
#include "mstar/mixedspin.hpp"
#include "mstar/spinops.hpp"
#include "mstar/sweep.hpp"

namespace mstar {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationHooks {
    // Applied to every freshly built coupling matrix inside the checks.
    std::function<void(Eigen::MatrixXd&)> tamper_coupling;
};

namespace validation_detail {

inline ComplexVector random_complex_vector(std::mt19937_64& rng, int size) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(size);
    for (int i = 0; i < size; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    return v;
}

inline PureSpinState random_pure_state(std::mt19937_64& rng, int twice_j) {
    ComplexVector v = random_complex_vector(rng, twice_j + 1);
    return PureSpinState(twice_j, v / v.norm());
}

inline MixedSpinState random_mixed_state(std::mt19937_64& rng, int twice_s) {
    ComplexVector down = random_complex_vector(rng, twice_s + 1);
    ComplexVector up = random_complex_vector(rng, twice_s + 1);
    const double norm = std::sqrt(down.squaredNorm() + up.squaredNorm());
    return MixedSpinState(twice_s, down / norm, up / norm);
}

struct Checker {
    std::vector<CheckResult>& results;
    std::string module;
    std::string scope;

    bool enabled() const { return scope == "all" || scope == module; }

    void record(const std::string& name, double residual, double tol) {
        std::ostringstream detail;
        detail << "max residual " << residual << " (tol " << tol << ")";
        results.push_back({module, name, residual <= tol, detail.str()});
    }

    void record_flag(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({module, name, pass, detail});
    }
};

inline Eigen::MatrixXd coupling_matrix(int twice_s, const ValidationHooks& hooks) {
    Eigen::MatrixXd u = coupling_transform(SpinMagnitude(twice_s)).matrix;
    if (hooks.tamper_coupling) hooks.tamper_coupling(u);
    return u;
}

inline void check_spinops(Checker& c, const ValidationHooks& hooks) {
    double worst_comm = 0.0, worst_adjoint = 0.0;
    for (int ts = 1; ts <= 5; ++ts) {
        const LadderOperators ops = ladder_operators(SpinMagnitude(ts));
        worst_comm = std::max(worst_comm,
                              (ops.z * ops.plus - ops.plus * ops.z - ops.plus).cwiseAbs().maxCoeff());
        worst_adjoint = std::max(
            worst_adjoint, (ops.minus - ops.plus.adjoint().eval()).cwiseAbs().maxCoeff());
    }
    c.record("ladder_commutation", worst_comm, 1e-12);
    c.record("ladder_adjoint", worst_adjoint, 0.0);

    double worst_unitary = 0.0, worst_diag = 0.0, worst_block_eig = 0.0, worst_sum = 0.0;
    bool structure_ok = true;
    for (int ts = 1; ts <= 5; ++ts) {
        const SpinMagnitude s(ts);
        const int dim = uncoupled_dimension(s);
        const Eigen::MatrixXd u = coupling_matrix(ts, hooks);
        worst_unitary = std::max(
            worst_unitary,
            (u * u.transpose() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());

        // U J^2 U^T must be diagonal with the two sector eigenvalues.
        const ComplexMatrix j2 = j_squared(s);
        const double j_up = (ts + 1) * (ts + 3) / 4.0;  // j+(j+ + 1) with j+ = (ts+1)/2
        const double j_dn = (ts - 1) * (ts + 1) / 4.0;
        Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(dim, dim);
        for (int n = 0; n <= ts + 1; ++n) expected(n, n) = j_up;
        for (int n = ts + 2; n < dim; ++n) expected(n, n) = j_dn;
        worst_diag = std::max(
            worst_diag, (u * j2.real() * u.transpose() - expected).cwiseAbs().maxCoeff());

        // Sparsity: two rows supported on one uncoupled state, 2s pairs of
        // rows supported on the V_n doublets.
        const CouplingTransform ct = coupling_transform(s);
        for (int row = 0; row < dim; ++row) {
            for (int col = 0; col < dim; ++col) {
                if (ct.matrix(row, col) == 0.0) continue;
                const int n = (col + 1) / 2;  // V_n housing this uncoupled state
                const bool in_upper = row <= ts + 1 && row == n;
                const bool in_lower = row >= ts + 2 && row == ct.lower_row(n);
                if (!(in_upper || in_lower)) structure_ok = false;
            }
        }

        const JSquaredBlocks blocks = block_matrices(s);
        Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(dim, dim);
        rebuilt(0, 0) = blocks.scalar_first;
        rebuilt(dim - 1, dim - 1) = blocks.scalar_last;
        for (int n = 1; n <= ts; ++n) {
            const Eigen::Matrix2d& a = blocks.blocks[n - 1];
            const int k0 = uncoupled_index(n, 0);      // |n>_1|0>_2
            const int k1 = uncoupled_index(n - 1, 1);  // |n-1>_1|1>_2
            rebuilt(k0, k0) = a(0, 0);
            rebuilt(k0, k1) = a(0, 1);
            rebuilt(k1, k0) = a(1, 0);
            rebuilt(k1, k1) = a(1, 1);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
            worst_block_eig = std::max(worst_block_eig, std::abs(es.eigenvalues()[0] - j_dn));
            worst_block_eig = std::max(worst_block_eig, std::abs(es.eigenvalues()[1] - j_up));
        }
        worst_sum = std::max(worst_sum, (rebuilt - j2.real()).cwiseAbs().maxCoeff());
    }
    c.record("coupling_unitary", worst_unitary, 1e-12);
    c.record("coupling_diagonalizes_j_squared", worst_diag, 1e-12);
    c.record_flag("coupling_block_structure", structure_ok,
                  structure_ok ? "two 1x1 and 2s 2x2 blocks" : "support outside V_n blocks");
    c.record("block_eigenvalues", worst_block_eig, 1e-12);
    c.record("block_direct_sum", worst_sum, 1e-12);
}

inline void check_majorana(Checker& c) {
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    double worst_scale = 0.0, worst_phase = 0.0, worst_rotation = 0.0, worst_residual = 0.0,
           worst_vieta = 0.0;
    bool counts_ok = true;
    for (int twice_j = 1; twice_j <= 5; ++twice_j) {
        for (int rep = 0; rep < 200; ++rep) {
            PureSpinState state = random_pure_state(rng, twice_j);
            if (rep % 5 == 4) {
                state.amplitudes[twice_j] = 0.0;  // force a degree deficit
                if (twice_j > 1 && rep % 10 == 9) state.amplitudes[twice_j - 1] = 0.0;
                if (state.amplitudes.norm() == 0.0) continue;
            }
            const ComplexVector coeffs = star_polynomial(state);
            const StarSet stars = solve_stars(coeffs, twice_j);
            if (stars.total_multiplicity() != twice_j) counts_ok = false;

            // scale invariance
            const Complex lambda = std::polar(0.25 + 3.0 * uni(rng), kTwoPi * uni(rng));
            const StarSet scaled = solve_stars((lambda * coeffs).eval(), twice_j);
            if (scaled.stars.size() != stars.stars.size()) {
                counts_ok = false;
            } else {
                for (std::size_t i = 0; i < stars.stars.size(); ++i) {
                    worst_scale = std::max(
                        worst_scale, great_circle_distance(stars.stars[i], scaled.stars[i]));
                }
            }

            // global phase invariance
            PureSpinState phased = state;
            phased.amplitudes *= std::polar(1.0, kTwoPi * uni(rng));
            const StarSet phased_stars = solve_stars(phased);
            if (phased_stars.stars.size() == stars.stars.size()) {
                for (std::size_t i = 0; i < stars.stars.size(); ++i) {
                    worst_phase = std::max(
                        worst_phase, great_circle_distance(stars.stars[i], phased_stars.stars[i]));
                }
            } else {
                counts_ok = false;
            }

            // residual bound on finite roots
            double coeff_sum = 0.0;
            for (int n = 0; n <= twice_j; ++n) coeff_sum += std::abs(coeffs[n]);
            for (const Star& s : stars.stars) {
                if (s.theta == kPi) continue;
                const Complex z = sphere_to_z(s.theta, s.phi);
                Complex p, dp;
                detail::horner(coeffs, z, p, dp);
                const double bound = coeff_sum * std::pow(std::max(1.0, std::abs(z)), twice_j);
                worst_residual = std::max(worst_residual, std::abs(p) / bound);
            }

            // Vieta round trip, scored after optimal complex scaling
            const ComplexVector rebuilt =
                reconstruct_coefficients(stars, infinity_multiplicity(stars));
            const Complex scale =
                rebuilt.dot(coeffs) / rebuilt.squaredNorm();  // dot conjugates its argument
            worst_vieta =
                std::max(worst_vieta, (coeffs - scale * rebuilt).norm() / coeffs.norm());
        }

        // z-rotation covariance: phi shifts by +alpha, theta fixed
        for (int rep = 0; rep < 20; ++rep) {
            const PureSpinState state = random_pure_state(rng, twice_j);
            const double alpha = 0.1 + 0.6 * uni(rng);
            PureSpinState rotated = state;
            for (int n = 0; n <= twice_j; ++n) {
                const double m = -0.5 * twice_j + n;
                rotated.amplitudes[n] *= std::polar(1.0, -m * alpha);
            }
            const StarSet before = solve_stars(state);
            const StarSet after = solve_stars(rotated);
            const std::vector<Star> be = expand_stars(before);
            std::vector<Star> shifted;
            for (const Star& s : be) {
                double phi = s.phi + alpha;
                if (phi >= kTwoPi) phi -= kTwoPi;
                shifted.push_back({s.theta, s.theta == 0.0 || s.theta == kPi ? 0.0 : phi, 1});
            }
            const std::vector<Star> af = expand_stars(after);
            if (af.size() != shifted.size()) {
                counts_ok = false;
                continue;
            }
            StarSet shifted_set{twice_j, shifted};
            const std::vector<int> perm = match_stars(shifted_set, after);
            for (std::size_t i = 0; i < shifted.size(); ++i) {
                worst_rotation = std::max(worst_rotation,
                                          great_circle_distance(shifted[i], af[perm[i]]));
            }
        }
    }
    c.record("scale_invariance", worst_scale, 1e-10);
    c.record("global_phase_invariance", worst_phase, 1e-10);
    c.record("z_rotation_covariance", worst_rotation, 1e-9);
    c.record_flag("count_conservation", counts_ok,
                  counts_ok ? "total multiplicity equals 2j" : "star count mismatch");
    c.record("residual_bound", worst_residual, 1e-9);
    c.record("vieta_round_trip", worst_vieta, 1e-8);
}

inline void check_mixedspin(Checker& c) {
    std::mt19937_64 rng(0x5eed0002);
    double worst_weight = 0.0, worst_sector = 0.0, worst_round = 0.0, worst_pseudo_phi = 0.0;
    bool counts_ok = true;
    for (int ts = 1; ts <= 5; ++ts) {
        const ComplexMatrix j2 = j_squared(SpinMagnitude(ts));
        const double j_up = (ts + 1) * (ts + 3) / 4.0;
        const double j_dn = (ts - 1) * (ts + 1) / 4.0;
        for (int rep = 0; rep < 100; ++rep) {
            const MixedSpinState state = random_mixed_state(rng, ts);
            const Decomposition d = decompose(state);
            worst_weight = std::max(
                worst_weight, std::abs(d.c_upper * d.c_upper + d.c_lower * d.c_lower - 1.0));

            // each component must live in its J^2 eigenspace
            Decomposition upper_only = d;
            upper_only.c_upper = 1.0;
            upper_only.c_lower = 0.0;
            const ComplexVector vu = compose(upper_only).to_uncoupled();
            worst_sector = std::max(worst_sector, (j2 * vu - j_up * vu).norm());
            if (ts >= 2 && d.c_lower > 1e-6) {
                Decomposition lower_only = d;
                lower_only.c_upper = 0.0;
                lower_only.c_lower = 1.0;
                const ComplexVector vl = compose(lower_only).to_uncoupled();
                worst_sector = std::max(worst_sector, (j2 * vl - j_dn * vl).norm());
            }

            const MixedSpinState back = compose(d);
            worst_round = std::max(worst_round, (back.to_uncoupled() - state.to_uncoupled()).norm());

            if (d.c_upper > 1e-12 && d.c_lower > 1e-12) {
                const FullRepresentation rep_full = full_representation(state);
                if (rep_full.total_multiplicity() != 2 * ts + 1) counts_ok = false;
            }
            worst_pseudo_phi = std::max(worst_pseudo_phi, std::abs(pseudo_spin_star(d).phi));
        }
    }
    c.record("weight_normalization", worst_weight, 1e-10);
    c.record("sector_invariance", worst_sector, 1e-10);
    c.record_flag("star_count_identity", counts_ok,
                  counts_ok ? "total multiplicity equals 4s+1" : "star count mismatch");
    c.record("decompose_compose_round_trip", worst_round, 1e-12);
    c.record("pseudo_phi_zero", worst_pseudo_phi, 0.0);
}

inline void check_dynamics(Checker& c) {
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst_norm = 0.0, worst_group = 0.0, worst_jz = 0.0, worst_sector = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int ts = 1 + static_cast<int>(rep % 3);
        const XXZParams params{uni(rng) * 2.0 - 0.5};
        const Hamiltonian h =
            (rep % 4 == 0) ? build_h1(params) : build_h2(SpinMagnitude(ts), params);
        const MixedSpinState psi = random_mixed_state(rng, h.twice_s);
        const double t1 = 4.0 * kPi * uni(rng);
        const double t2 = 4.0 * kPi * uni(rng);

        const Propagator prop(h);
        const MixedSpinState a = prop.apply(t1 + t2, psi);
        const MixedSpinState b = prop.apply(t2, prop.apply(t1, psi));
        worst_norm = std::max(worst_norm, std::abs(a.norm() - 1.0));
        worst_group = std::max(worst_group, (a.to_uncoupled() - b.to_uncoupled()).norm());

        const LadderOperators big = ladder_operators(SpinMagnitude(h.twice_s));
        const int dim = h.twice_s + 1;
        const ComplexMatrix jz = kron(big.z, ComplexMatrix::Identity(2, 2)) +
                                 kron(ComplexMatrix::Identity(dim, dim), 0.5 * pauli_z());
        const ComplexVector v0 = psi.to_uncoupled();
        const ComplexVector v1 = a.to_uncoupled();
        worst_jz = std::max(
            worst_jz, std::abs((v1.dot(jz * v1) - v0.dot(jz * v0)).real()));
    }
    c.record("evolution_unitarity", worst_norm, 1e-12);
    c.record("group_property", worst_group, 1e-10);
    c.record("jz_conservation", worst_jz, 1e-10);

    // delta = 1 keeps both coupled populations constant for (1, 1/2)
    const Hamiltonian h2 = build_h2(SpinMagnitude(2), {1.0});
    const Propagator prop(h2);
    for (int rep = 0; rep < 20; ++rep) {
        const MixedSpinState psi = random_mixed_state(rng, 2);
        const Decomposition d0 = decompose(psi);
        const Decomposition dt = decompose(prop.apply(0.3 + 2.0 * uni(rng), psi));
        worst_sector = std::max(worst_sector, std::abs(dt.c_upper - d0.c_upper));
        worst_sector = std::max(worst_sector, std::abs(dt.c_lower - d0.c_lower));
    }
    c.record("delta1_population_invariance", worst_sector, 1e-12);

    SweepSpec spec;
    spec.variable = SweepVariable::time;
    spec.start = 0.0;
    spec.stop = kPi;
    spec.steps = 17;
    spec.delta = 0.5;
    spec.varphi = kPi / 5.0;
    spec.family = StateFamily::one_half;
    const std::vector<TrajectoryRecord> first = run_sweep(spec);
    const std::vector<TrajectoryRecord> second = run_sweep(spec);
    bool deterministic = first.size() == second.size();
    if (deterministic) {
        for (std::size_t i = 0; i < first.size(); ++i) {
            if (first[i].theta != second[i].theta || first[i].phi != second[i].phi ||
                first[i].star_index != second[i].star_index || first[i].set != second[i].set) {
                deterministic = false;
                break;
            }
        }
    }
    c.record_flag("sweep_determinism", deterministic,
                  deterministic ? "repeated runs identical" : "records differ between runs");
}

inline void check_oracles(Checker& c) {
    double worst_triplet = 0.0, worst_pseudo = 0.0, worst_symmetry = 0.0, worst_meridian = 0.0;
    for (double varphi : {kPi / 6, kPi / 3, 2 * kPi / 3, 5 * kPi / 6, 7 * kPi / 6}) {
        for (double delta : {0.0, 0.5, 1.0}) {
            for (int i = 0; i < 12; ++i) {
                const double t = kPi * i / 11.0;
                const HalfHalfParams p{varphi, delta, t};
                const StarSet closed = triplet_stars_closed_form(p);
                const FullRepresentation rep = full_representation(example_state_half_half(p));
                if (!rep.upper_stars) {
                    worst_triplet = std::numeric_limits<double>::infinity();
                    continue;
                }
                const std::vector<int> perm = match_stars(closed, *rep.upper_stars);
                const std::vector<Star> ce = expand_stars(closed);
                const std::vector<Star> pe = expand_stars(*rep.upper_stars);
                for (std::size_t k = 0; k < ce.size(); ++k) {
                    worst_triplet =
                        std::max(worst_triplet, great_circle_distance(ce[k], pe[perm[k]]));
                }
                worst_pseudo = std::max(
                    worst_pseudo, great_circle_distance(pseudo_star_closed_form_half_half(varphi),
                                                        rep.pseudo_star));
                // the two triplet stars map onto each other under a 180
                // degree rotation about the x-axis
                const Star& s0 = ce[0];
                const Star mirrored{kPi - s0.theta,
                                    s0.phi == 0.0 ? 0.0 : kTwoPi - s0.phi, 1};
                worst_symmetry = std::max(worst_symmetry, great_circle_distance(mirrored, ce[1]));
            }
        }
    }
    c.record("triplet_oracle_equivalence", worst_triplet, 1e-9);
    c.record("pseudo_oracle_equivalence", worst_pseudo, 1e-10);
    c.record("x_axis_rotation_symmetry", worst_symmetry, 1e-9);

    for (int i = 0; i < 25; ++i) {
        const double varphi = 0.031 + (kTwoPi - 0.062) * i / 24.0;
        const FullRepresentation rep =
            full_representation(example_state_one_half({varphi, 0.0, 0.0}));
        auto meridian_residual = [](const StarSet& set) {
            double worst = 0.0;
            for (const Star& s : set.stars) {
                const double d = std::min({s.phi, std::abs(s.phi - kPi), kTwoPi - s.phi});
                worst = std::max(worst, d);
            }
            return worst;
        };
        if (rep.upper_stars) worst_meridian = std::max(worst_meridian, meridian_residual(*rep.upper_stars));
        if (rep.lower_stars) worst_meridian = std::max(worst_meridian, meridian_residual(*rep.lower_stars));
    }
    c.record("prime_meridian_confinement", worst_meridian, 1e-9);
}

}  // namespace validation_detail

inline const std::vector<std::string>& validation_scopes() {
    static const std::vector<std::string> scopes = {"all",      "spinops",  "majorana",
                                                    "mixedspin", "dynamics", "oracles"};
    return scopes;
}

/// Runs the invariant suite for one module or all of them. Throws
/// std::invalid_argument for an unknown scope.
inline std::vector<CheckResult> run_validation(const std::string& scope,
                                               const ValidationHooks& hooks = {}) {
    using namespace validation_detail;
    bool known = false;
    for (const std::string& s : validation_scopes()) known = known || s == scope;
    if (!known) {
        throw std::invalid_argument("unknown validation scope: " + scope);
    }
    std::vector<CheckResult> results;
    {
        Checker c{results, "spinops", scope};
        if (c.enabled()) check_spinops(c, hooks);
    }
    {
        Checker c{results, "majorana", scope};
        if (c.enabled()) check_majorana(c);
    }
    {
        Checker c{results, "mixedspin", scope};
        if (c.enabled()) check_mixedspin(c);
    }
    {
        Checker c{results, "dynamics", scope};
        if (c.enabled()) check_dynamics(c);
    }
    {
        Checker c{results, "oracles", scope};
        if (c.enabled()) check_oracles(c);
    }
    return results;
}

}  // namespace mstar
