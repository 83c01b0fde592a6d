#pragma once

// Angular-momentum operators for a spin-s particle coupled to a spin-1/2,
// the total-J^2 operator on the product space, its 2x2 invariant-block
// form, and the real unitary transform between the uncoupled product
// basis and the coupled total-J basis.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace mstar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Spin magnitude carried as the integer 2s so half-integer spins stay
/// exact and every dimension/index stays integral.
struct SpinMagnitude {
    int twice_s = 0;

    explicit SpinMagnitude(int twice) : twice_s(twice) {
        if (twice < 0) {
            throw std::invalid_argument("spin magnitude must be nonnegative");
        }
    }

    double value() const { return 0.5 * twice_s; }
    int dimension() const { return twice_s + 1; }
};

// Basis conventions
// -----------------
// Single spin s: |n> = |-s+n>, n = 0..2s (n = 0 is the lowest weight).
// Product space (s, 1/2): |n>_1 |m>_2 flattened as k = 2n + m with
// m = 0 (down) or m = 1 (up). Each invariant subspace V_n of J^2,
// spanned by |n>_1|0>_2 and |n-1>_1|1>_2, is then contiguous in k.
inline int uncoupled_index(int n, int m) { return 2 * n + m; }
inline int uncoupled_dimension(SpinMagnitude s) { return 2 * (s.twice_s + 1); }

/// Pauli matrices (eigenvalues +-1) in the (down, up) basis.
inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, 1), Complex(0, -1), 0;
    return m;
}
inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << -1, 0, 0, 1;
    return m;
}
inline ComplexMatrix pauli_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}
inline ComplexMatrix pauli_minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

/// Kronecker product with the first factor on the slow (large-spin) index,
/// matching the k = 2n + m basis ordering.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

struct LadderOperators {
    ComplexMatrix plus;
    ComplexMatrix minus;
    ComplexMatrix z;
};

/// Raising/lowering/z operators of a single spin s (hbar = 1):
///   S+ |n> = sqrt((n+1)(2s-n)) |n+1>
///   S- |n> = sqrt(n(2s-n+1))   |n-1>
///   Sz |n> = (-s+n)            |n>
inline LadderOperators ladder_operators(SpinMagnitude s) {
    const int dim = s.dimension();
    LadderOperators ops{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim),
                        ComplexMatrix::Zero(dim, dim)};
    for (int n = 0; n < dim; ++n) {
        ops.z(n, n) = -s.value() + n;
        if (n + 1 < dim) {
            const double amp = std::sqrt(double(n + 1) * double(s.twice_s - n));
            ops.plus(n + 1, n) = amp;
            ops.minus(n, n + 1) = amp;  // S- is exactly the adjoint of S+
        }
    }
    return ops;
}

/// Total J^2 = S^2 + sigma^2/4 + Sz sigma_z + (S+ sigma_- + S- sigma_+)
/// on the 2(2s+1)-dimensional uncoupled space.
inline ComplexMatrix j_squared(SpinMagnitude s) {
    if (s.twice_s < 1) {
        throw std::invalid_argument("j_squared requires twice_s >= 1");
    }
    const LadderOperators big = ladder_operators(s);
    const int dim = s.dimension();
    const ComplexMatrix eye = ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
    const double casimir = s.value() * (s.value() + 1.0) + 0.75;  // S^2 + sigma^2/4
    ComplexMatrix j2 = casimir * kron(eye, eye2);
    j2 += kron(big.z, pauli_z());
    j2 += kron(big.plus, pauli_minus());
    j2 += kron(big.minus, pauli_plus());
    return j2;
}

/// J^2 restricted to its invariant subspaces. blocks[n-1] is the 2x2
/// matrix on V_n (n = 1..2s) in the basis (|n>_1|0>_2, |n-1>_1|1>_2):
///   A_n = (s^2+s+1/4) I + (s-n+1/2) sigma_z' + sqrt(n(2s-n+1)) sigma_x'
/// where the primed Paulis act on that two-vector with |n>_1|0>_2 as the
/// +1 eigenvector of sigma_z'. The two one-dimensional subspaces V_0 and
/// V_{2s+1} carry the scalar s^2+2s+3/4.
struct JSquaredBlocks {
    std::vector<Eigen::Matrix2d> blocks;
    double scalar_first = 0.0;
    double scalar_last = 0.0;
};

inline JSquaredBlocks block_matrices(SpinMagnitude s) {
    if (s.twice_s < 1) {
        throw std::invalid_argument("block_matrices requires twice_s >= 1");
    }
    const double sv = s.value();
    JSquaredBlocks out;
    out.scalar_first = sv * sv + 2.0 * sv + 0.75;
    out.scalar_last = out.scalar_first;
    const double trace_half = sv * sv + sv + 0.25;
    for (int n = 1; n <= s.twice_s; ++n) {
        const double bz = sv - n + 0.5;
        const double bx = std::sqrt(double(n) * double(s.twice_s - n + 1));
        Eigen::Matrix2d a;
        a << trace_half + bz, bx, bx, trace_half - bz;
        out.blocks.push_back(a);
    }
    return out;
}

/// Real unitary mapping uncoupled product amplitudes to coupled total-J
/// amplitudes. Row layout: rows 0..2s+1 are |n>_{s+1/2}; rows 2s+2..4s+1
/// are |n>_{s-1/2} for n = 1..2s (stored with n' = n-1). Columns follow
/// the k = 2n + m uncoupled ordering. Rows are J^2 eigenvectors, so
/// U J^2 U^T is diagonal.
struct CouplingTransform {
    int twice_s = 0;
    Eigen::MatrixXd matrix;

    int upper_row(int n) const { return n; }                        // n = 0..2s+1
    int lower_row(int n) const { return twice_s + 2 + (n - 1); }    // n = 1..2s
};

inline CouplingTransform coupling_transform(SpinMagnitude s) {
    if (s.twice_s < 1) {
        throw std::invalid_argument("coupling_transform requires twice_s >= 1");
    }
    const int ts = s.twice_s;
    const int dim = uncoupled_dimension(s);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    // |n>_{s+1/2} = sqrt((2s-n+1)/(2s+1)) |n>_1|0>_2 + sqrt(n/(2s+1)) |n-1>_1|1>_2.
    // The n = 0 and n = 2s+1 rows degenerate to the one-dimensional
    // subspaces |0>_1|0>_2 and |2s>_1|1>_2.
    for (int n = 0; n <= ts + 1; ++n) {
        if (n <= ts) {
            u(n, uncoupled_index(n, 0)) = std::sqrt(double(ts - n + 1) / double(ts + 1));
        }
        if (n >= 1) {
            u(n, uncoupled_index(n - 1, 1)) = std::sqrt(double(n) / double(ts + 1));
        }
    }
    // |n>_{s-1/2} = sqrt(n/(2s+1)) |n>_1|0>_2 - sqrt((2s-n+1)/(2s+1)) |n-1>_1|1>_2.
    for (int n = 1; n <= ts; ++n) {
        const int row = ts + 2 + (n - 1);
        u(row, uncoupled_index(n, 0)) = std::sqrt(double(n) / double(ts + 1));
        u(row, uncoupled_index(n - 1, 1)) = -std::sqrt(double(ts - n + 1) / double(ts + 1));
    }
    return CouplingTransform{ts, std::move(u)};
}

}  // namespace mstar
