#pragma once

// Parameter/time sweeps over the example families (or a user-supplied
// state), emitting star trajectory records whose indices are continuity
// matched between neighboring grid points.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstar/closed_form.hpp"
#include "mstar/dynamics.hpp"
#include "mstar/mixedspin.hpp"

namespace mstar {

enum class SweepVariable { time, varphi };
enum class StateFamily { half_half, one_half, file };
enum class SetLabel { upper, lower, pseudo };

inline const char* set_label_name(SetLabel label) {
    switch (label) {
        case SetLabel::upper: return "upper";
        case SetLabel::lower: return "lower";
        case SetLabel::pseudo: return "pseudo";
    }
    return "?";
}

struct SweepSpec {
    SweepVariable variable = SweepVariable::time;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    double delta = 0.0;
    double varphi = 0.0;  // fixed value when sweeping time
    double t = 0.0;       // fixed value when sweeping varphi
    StateFamily family = StateFamily::half_half;
    std::optional<MixedSpinState> file_state;  // required for StateFamily::file
};

struct TrajectoryRecord {
    double t = 0.0;
    double varphi = 0.0;
    double delta = 0.0;
    SetLabel set = SetLabel::upper;
    int star_index = 0;
    double theta = 0.0;
    double phi = 0.0;
};

namespace detail {

struct TrackedSet {
    std::vector<Star> last;  // aligned unit stars at the previous grid point
    bool valid = false;
};

// Aligns the current star set to the previous grid point when counts
// allow, otherwise restarts from canonical order.
inline std::vector<Star> align_to_previous(const std::optional<StarSet>& current,
                                           TrackedSet& track) {
    if (!current) {
        track.valid = false;
        return {};
    }
    std::vector<Star> expanded = expand_stars(*current);
    if (!track.valid || track.last.size() != expanded.size()) {
        track.last = expanded;
        track.valid = true;
        return expanded;
    }
    StarSet prev_set{0, {}};
    for (const Star& s : track.last) prev_set.stars.push_back(s);
    const std::vector<int> perm = match_stars(prev_set, *current);
    std::vector<Star> aligned(expanded.size());
    for (std::size_t i = 0; i < expanded.size(); ++i) aligned[i] = expanded[perm[i]];
    track.last = aligned;
    return aligned;
}

}  // namespace detail

/// Runs the sweep and returns records ordered by grid point, then set
/// (upper, lower, pseudo), then star index. Output is deterministic for
/// a given spec.
inline std::vector<TrajectoryRecord> run_sweep(const SweepSpec& spec) {
    if (spec.steps < 2) {
        throw std::invalid_argument("steps >= 2 required");
    }
    if (!(spec.start < spec.stop)) {
        throw std::invalid_argument("start < stop required");
    }
    if (spec.family == StateFamily::file) {
        if (!spec.file_state) {
            throw std::invalid_argument("file family requires a loaded state");
        }
        if (spec.variable == SweepVariable::varphi) {
            throw std::invalid_argument("varphi sweep requires a parametric family");
        }
    }

    // For the file family, evolution uses the spin-operator Hamiltonian.
    std::optional<Propagator> file_propagator;
    if (spec.family == StateFamily::file) {
        file_propagator.emplace(build_h2(SpinMagnitude(spec.file_state->twice_s), {spec.delta}));
    }

    auto state_at = [&spec, &file_propagator](double t, double varphi) -> MixedSpinState {
        switch (spec.family) {
            case StateFamily::half_half:
                return example_state_half_half({varphi, spec.delta, t});
            case StateFamily::one_half:
                return example_state_one_half({varphi, spec.delta, t});
            case StateFamily::file:
                return file_propagator->apply(t, *spec.file_state);
        }
        throw std::logic_error("unknown state family");
    };

    std::vector<TrajectoryRecord> records;
    detail::TrackedSet upper_track, lower_track;
    for (int i = 0; i < spec.steps; ++i) {
        const double x = spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
        const double t = spec.variable == SweepVariable::time ? x : spec.t;
        const double varphi = spec.variable == SweepVariable::varphi ? x : spec.varphi;

        const FullRepresentation rep = full_representation(state_at(t, varphi));
        const std::vector<Star> upper = detail::align_to_previous(rep.upper_stars, upper_track);
        const std::vector<Star> lower = detail::align_to_previous(rep.lower_stars, lower_track);

        for (std::size_t k = 0; k < upper.size(); ++k) {
            records.push_back({t, varphi, spec.delta, SetLabel::upper, static_cast<int>(k),
                               upper[k].theta, upper[k].phi});
        }
        for (std::size_t k = 0; k < lower.size(); ++k) {
            records.push_back({t, varphi, spec.delta, SetLabel::lower, static_cast<int>(k),
                               lower[k].theta, lower[k].phi});
        }
        records.push_back({t, varphi, spec.delta, SetLabel::pseudo, 0, rep.pseudo_star.theta,
                           rep.pseudo_star.phi});
    }
    return records;
}

}  // namespace mstar
