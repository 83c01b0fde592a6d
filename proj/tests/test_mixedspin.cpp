#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mstar/closed_form.hpp"
#include "mstar/mixedspin.hpp"
#include "mstar/spinops.hpp"
#include "test_util.hpp"

using namespace mstar;
using mstar_test::random_complex_vector;
using mstar_test::random_mixed_state;

namespace {

MixedSpinState singlet_state() {
    const double inv = 1.0 / std::sqrt(2.0);
    ComplexVector down = ComplexVector::Zero(2), up = ComplexVector::Zero(2);
    down[1] = inv;  // |up,down>
    up[0] = -inv;   // |down,up>
    return MixedSpinState(1, std::move(down), std::move(up));
}

}  // namespace

TEST_CASE("decompose on the two-qubit reference states") {
    SECTION("pure singlet lands entirely in the lower component") {
        const Decomposition d = decompose(singlet_state());
        REQUIRE_THAT(d.c_lower, Catch::Matchers::WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(d.c_upper, Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    SECTION("|up,up> is the highest-weight triplet state") {
        ComplexVector down = ComplexVector::Zero(2), up = ComplexVector::Zero(2);
        up[1] = 1.0;
        const Decomposition d = decompose(MixedSpinState(1, std::move(down), std::move(up)));
        REQUIRE_THAT(d.c_upper, Catch::Matchers::WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(d.c_lower, Catch::Matchers::WithinAbs(0.0, 1e-12));
        REQUIRE(std::abs(d.upper.amplitudes[2]) > 1.0 - 1e-12);
        REQUIRE(std::abs(d.upper.amplitudes[0]) < 1e-12);
        REQUIRE(std::abs(d.upper.amplitudes[1]) < 1e-12);
    }
    SECTION("(1, 1/2) example at varphi = pi/4, t = 0 has no lower component") {
        const Decomposition d =
            decompose(example_state_one_half({kPi / 4, 0.0, 0.0}));
        REQUIRE(d.c_lower < 1e-12);
        REQUIRE(d.lower.amplitudes.norm() < 1e-12);
        REQUIRE_THAT(d.c_upper, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("zero and unnormalized inputs are rejected") {
        ComplexVector zero = ComplexVector::Zero(2);
        REQUIRE_THROWS_AS(decompose(MixedSpinState(1, zero, zero)), std::domain_error);
        ComplexVector big = ComplexVector::Zero(2);
        big[0] = 2.0;
        REQUIRE_THROWS_AS(decompose(MixedSpinState(1, big, zero)), std::invalid_argument);
    }
}

TEST_CASE("compose on the one-dimensional subspaces") {
    SECTION("top coupled state maps to |2s>_1 |up>_2") {
        for (int ts : {1, 2, 3}) {
            Decomposition d;
            ComplexVector e = ComplexVector::Zero(ts + 2);
            e[ts + 1] = 1.0;
            d.upper = PureSpinState(ts + 1, e);
            d.lower = PureSpinState(ts - 1, ComplexVector::Zero(ts));
            d.c_upper = 1.0;
            d.c_lower = 0.0;
            const MixedSpinState state = compose(d);
            REQUIRE(std::abs(state.d_up[ts] - Complex(1, 0)) < 1e-15);
            REQUIRE(state.d_down.norm() < 1e-15);
        }
    }
    SECTION("pure lower for s = 1/2 reproduces the singlet") {
        Decomposition d;
        d.upper = PureSpinState(2, ComplexVector::Zero(3));
        ComplexVector f(1);
        f[0] = 1.0;
        d.lower = PureSpinState(0, f);
        d.c_upper = 0.0;
        d.c_lower = 1.0;
        const MixedSpinState state = compose(d);
        const MixedSpinState expected = singlet_state();
        REQUIRE((state.to_uncoupled() - expected.to_uncoupled()).norm() < 1e-15);
    }
}

TEST_CASE("decompose and compose are mutually inverse") {
    std::mt19937_64 rng(4242);
    for (int ts : {1, 2, 3}) {
        for (int rep = 0; rep < 100; ++rep) {
            const MixedSpinState state = random_mixed_state(rng, ts);
            const Decomposition d = decompose(state);
            REQUIRE_THAT(d.c_upper * d.c_upper + d.c_lower * d.c_lower,
                         Catch::Matchers::WithinAbs(1.0, 1e-10));
            const MixedSpinState back = compose(d);
            REQUIRE((back.to_uncoupled() - state.to_uncoupled()).norm() < 1e-12);

            // compose . decompose on a synthesized decomposition
            Decomposition synth;
            ComplexVector e = random_complex_vector(rng, ts + 2);
            ComplexVector f = random_complex_vector(rng, ts);
            synth.upper = PureSpinState(ts + 1, e / e.norm());
            synth.lower = PureSpinState(ts - 1, f / f.norm());
            const double mix = 0.2 + 0.6 * (rep % 7) / 7.0;
            synth.c_upper = std::cos(mix);
            synth.c_lower = std::sin(mix);
            const Decomposition round = decompose(compose(synth));
            REQUIRE_THAT(round.c_upper, Catch::Matchers::WithinAbs(synth.c_upper, 1e-12));
            REQUIRE_THAT(round.c_lower, Catch::Matchers::WithinAbs(synth.c_lower, 1e-12));
            REQUIRE((round.upper.amplitudes - synth.upper.amplitudes).norm() < 1e-12);
            REQUIRE((round.lower.amplitudes - synth.lower.amplitudes).norm() < 1e-12);
        }
    }
}

TEST_CASE("components land in the correct J^2 eigenspaces") {
    std::mt19937_64 rng(77);
    for (int ts : {1, 2, 3, 4, 5}) {
        const ComplexMatrix j2 = j_squared(SpinMagnitude(ts));
        const double j_up = (ts + 1) * (ts + 3) / 4.0;
        const double j_dn = (ts - 1) * (ts + 1) / 4.0;
        for (int rep = 0; rep < 25; ++rep) {
            Decomposition d = decompose(random_mixed_state(rng, ts));
            Decomposition upper_only = d;
            upper_only.c_upper = 1.0;
            upper_only.c_lower = 0.0;
            const ComplexVector vu = compose(upper_only).to_uncoupled();
            REQUIRE((j2 * vu - j_up * vu).norm() < 1e-10);

            Decomposition lower_only = d;
            lower_only.c_upper = 0.0;
            lower_only.c_lower = 1.0;
            const ComplexVector vl = compose(lower_only).to_uncoupled();
            REQUIRE((j2 * vl - j_dn * vl).norm() < 1e-10);
        }
    }
}

TEST_CASE("pseudo-spin star") {
    SECTION("pure upper component points north") {
        ComplexVector down = ComplexVector::Zero(2), up = ComplexVector::Zero(2);
        up[1] = 1.0;
        const Star star = pseudo_spin_star(decompose(MixedSpinState(1, down, up)));
        REQUIRE(star.theta == 0.0);
        REQUIRE(star.phi == 0.0);
        REQUIRE(star.multiplicity == 1);
    }
    SECTION("pure lower component points south") {
        const Star star = pseudo_spin_star(decompose(singlet_state()));
        REQUIRE(star.theta == kPi);
        REQUIRE(star.phi == 0.0);
    }
    SECTION("(1/2,1/2) family at varphi = pi/3 gives theta = 2 atan(1/sqrt(7))") {
        const Star star =
            pseudo_spin_star(decompose(example_state_half_half({kPi / 3, 0.0, 0.0})));
        REQUIRE_THAT(star.theta,
                     Catch::Matchers::WithinAbs(2.0 * std::atan(1.0 / std::sqrt(7.0)), 1e-12));
        REQUIRE(star.phi == 0.0);
    }
    SECTION("phi is identically zero on random states") {
        std::mt19937_64 rng(11);
        for (int rep = 0; rep < 50; ++rep) {
            REQUIRE(pseudo_spin_star(decompose(random_mixed_state(rng, 2))).phi == 0.0);
        }
    }
}

TEST_CASE("full representation star counts") {
    std::mt19937_64 rng(123);
    SECTION("s = 1/2 gives (2, 0, 1)") {
        for (int rep = 0; rep < 20; ++rep) {
            const MixedSpinState state = random_mixed_state(rng, 1);
            const Decomposition d = decompose(state);
            if (d.c_upper < 1e-12 || d.c_lower < 1e-12) continue;
            const FullRepresentation rep_full = full_representation(state);
            REQUIRE(rep_full.upper_stars);
            REQUIRE(rep_full.upper_stars->total_multiplicity() == 2);
            REQUIRE(rep_full.lower_stars);
            REQUIRE(rep_full.lower_stars->total_multiplicity() == 0);  // spin-0 component
            REQUIRE(rep_full.total_multiplicity() == 3);
        }
    }
    SECTION("s = 1 gives (3, 1, 1) and s = 3/2 gives (4, 2, 1)") {
        for (int ts : {2, 3}) {
            for (int rep = 0; rep < 20; ++rep) {
                const MixedSpinState state = random_mixed_state(rng, ts);
                const Decomposition d = decompose(state);
                if (d.c_upper < 1e-12 || d.c_lower < 1e-12) continue;
                const FullRepresentation rep_full = full_representation(state);
                REQUIRE(rep_full.upper_stars);
                REQUIRE(rep_full.lower_stars);
                REQUIRE(rep_full.upper_stars->total_multiplicity() == ts + 1);
                REQUIRE(rep_full.lower_stars->total_multiplicity() == ts - 1);
                REQUIRE(rep_full.total_multiplicity() == 2 * ts + 1);
            }
        }
    }
    SECTION("zero-weight component is reported as undefined") {
        ComplexVector down = ComplexVector::Zero(2), up = ComplexVector::Zero(2);
        up[1] = 1.0;  // |up,up>: no singlet admixture
        const FullRepresentation rep_full =
            full_representation(MixedSpinState(1, down, up));
        REQUIRE(rep_full.upper_stars);
        REQUIRE_FALSE(rep_full.lower_stars);
        REQUIRE(rep_full.pseudo_star.theta == 0.0);
    }
    SECTION("star-count identity 4s+1 across sizes") {
        for (int ts : {1, 2, 3, 4, 5}) {
            for (int rep = 0; rep < 40; ++rep) {
                const MixedSpinState state = random_mixed_state(rng, ts);
                const Decomposition d = decompose(state);
                if (d.c_upper < 1e-12 || d.c_lower < 1e-12) continue;
                REQUIRE(full_representation(state).total_multiplicity() == 2 * ts + 1);
            }
        }
    }
}
