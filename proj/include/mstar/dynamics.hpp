#pragma once

// XXZ-type Hamiltonians on the (s, 1/2) product space, exact unitary
// time evolution by Hermitian eigendecomposition, and trajectory
// matching of star sets between neighboring sweep points.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mstar/majorana.hpp"
#include "mstar/mixedspin.hpp"
#include "mstar/spinops.hpp"

namespace mstar {

/// Anisotropy of the XXZ exchange. The literature usually takes
/// delta in [0, 1], but nothing in the construction needs that, so any
/// finite value is accepted.
struct XXZParams {
    double delta = 0.0;
};

enum class HamiltonianForm { pauli_h1, spin_h2 };

struct Hamiltonian {
    int twice_s = 1;
    HamiltonianForm form = HamiltonianForm::spin_h2;
    ComplexMatrix matrix;

    int dimension() const { return 2 * (twice_s + 1); }
};

/// H1 = s1x s2x + s1y s2y + delta s1z s2z for two spin-1/2 particles in
/// Pauli normalization (eigenvalues +-1, not 1/2).
inline Hamiltonian build_h1(XXZParams params) {
    ComplexMatrix h = kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) +
                      params.delta * kron(pauli_z(), pauli_z());
    return Hamiltonian{1, HamiltonianForm::pauli_h1, std::move(h)};
}

/// H2 = S1x S2x + S1y S2y + delta S1z S2z with genuine spin operators on
/// both factors (the spin-1/2 operators are sigma/2; at s = 1/2 this is
/// a quarter of H1).
inline Hamiltonian build_h2(SpinMagnitude s, XXZParams params) {
    if (s.twice_s < 1) {
        throw std::invalid_argument("build_h2 requires twice_s >= 1");
    }
    const LadderOperators big = ladder_operators(s);
    const ComplexMatrix sx = 0.5 * (big.plus + big.minus);
    const ComplexMatrix sy = Complex(0, -0.5) * (big.plus - big.minus);
    ComplexMatrix h = kron(sx, 0.5 * pauli_x()) + kron(sy, 0.5 * pauli_y()) +
                      params.delta * kron(big.z, 0.5 * pauli_z());
    return Hamiltonian{s.twice_s, HamiltonianForm::spin_h2, std::move(h)};
}

/// Precomputed eigendecomposition of a Hamiltonian, for evaluating
/// exp(-iHt) at many times without refactorizing.
class Propagator {
  public:
    explicit Propagator(const Hamiltonian& h) : twice_s_(h.twice_s) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("Hamiltonian eigendecomposition failed");
        }
        vectors_ = solver.eigenvectors();
        values_ = solver.eigenvalues();
    }

    MixedSpinState apply(double t, const MixedSpinState& state) const {
        if (state.twice_s != twice_s_) {
            throw std::invalid_argument("state dimension does not match Hamiltonian");
        }
        ComplexVector modes = vectors_.adjoint() * state.to_uncoupled();
        for (Eigen::Index i = 0; i < modes.size(); ++i) {
            modes[i] *= std::polar(1.0, -values_[i] * t);
        }
        return MixedSpinState::from_uncoupled(twice_s_, vectors_ * modes);
    }

  private:
    int twice_s_;
    ComplexMatrix vectors_;
    Eigen::VectorXd values_;
};

/// One-shot exp(-iHt) |state>; norm-preserving by construction.
inline MixedSpinState evolve(const Hamiltonian& h, double t, const MixedSpinState& state) {
    return Propagator(h).apply(t, state);
}

/// Star list with multiplicities expanded to unit stars, canonical order
/// preserved.
inline std::vector<Star> expand_stars(const StarSet& set) {
    std::vector<Star> out;
    out.reserve(set.total_multiplicity());
    for (const Star& s : set.stars) {
        for (int i = 0; i < s.multiplicity; ++i) out.push_back({s.theta, s.phi, 1});
    }
    return out;
}

/// Assignment of next's unit stars to prev's, minimizing the total
/// great-circle distance. Returns perm with aligned[i] = next[perm[i]].
/// Exhaustive search; star counts stay tiny here. Equal-cost matchings
/// resolve to the lexicographically smallest index assignment, which is
/// the smallest aligned (theta, phi) sequence since expanded stars are
/// canonically sorted.
inline std::vector<int> match_stars(const StarSet& prev, const StarSet& next) {
    if (prev.total_multiplicity() != next.total_multiplicity()) {
        throw std::invalid_argument("star sets have different total multiplicity");
    }
    const std::vector<Star> a = expand_stars(prev);
    const std::vector<Star> b = expand_stars(next);
    const int n = static_cast<int>(a.size());
    if (n > 8) {
        throw std::invalid_argument("exhaustive matching supports at most 8 stars");
    }
    std::vector<int> perm(n), best(n);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (int i = 0; i < n; ++i) cost += great_circle_distance(a[i], b[perm[i]]);
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace mstar
