#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "mstar/io.hpp"
#include "mstar/svg.hpp"
#include "mstar/sweep.hpp"
#include "test_util.hpp"

using namespace mstar;

namespace {

std::filesystem::path temp_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("mstar_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("state file round trip") {
    std::mt19937_64 rng(21);
    const MixedSpinState state = mstar_test::random_mixed_state(rng, 2);
    const auto path = (temp_dir() / "state.json").string();
    save_state_file(path, state);
    const MixedSpinState loaded = load_state_file(path);
    REQUIRE(loaded.twice_s == 2);
    REQUIRE((loaded.to_uncoupled() - state.to_uncoupled()).norm() < 1e-15);
}

TEST_CASE("state file validation") {
    SECTION("malformed JSON raises parse_error") {
        const auto path = (temp_dir() / "broken.json").string();
        detail::write_file(path, "{ not json");
        REQUIRE_THROWS_AS(load_state_file(path), parse_error);
    }
    SECTION("wrong array lengths raise parse_error") {
        const auto path = (temp_dir() / "shape.json").string();
        detail::write_file(path, R"({"two_s": 2, "d_down": [[1,0]], "d_up": [[0,0]]})");
        REQUIRE_THROWS_AS(load_state_file(path), parse_error);
    }
    SECTION("zero state raises invalid_state_error") {
        const auto path = (temp_dir() / "zero.json").string();
        detail::write_file(
            path, R"({"two_s": 1, "d_down": [[0,0],[0,0]], "d_up": [[0,0],[0,0]]})");
        REQUIRE_THROWS_AS(load_state_file(path), invalid_state_error);
    }
    SECTION("off-norm states are renormalized on load") {
        const auto path = (temp_dir() / "offnorm.json").string();
        detail::write_file(
            path, R"({"two_s": 1, "d_down": [[0.8,0],[0,0]], "d_up": [[0,0],[0.7,0]]})");
        const MixedSpinState state = load_state_file(path);
        REQUIRE_THAT(state.norm(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("star record serialization is stable under reload") {
    StarRecordFile rec;
    rec.two_s = 2;
    rec.t = 0.25;
    rec.varphi = kPi / 3;
    rec.delta = 1.0;
    rec.stars.push_back({SetLabel::upper, 0.123456789012345, 5.43210987654321, 1});
    rec.stars.push_back({SetLabel::upper, kPi / 2, 0.0, 2});
    rec.stars.push_back({SetLabel::lower, 2.5, kPi, 1});
    rec.stars.push_back({SetLabel::pseudo, 0.4, 0.0, 1});

    const std::string once = serialize_star_records(rec);
    const StarRecordFile reloaded = parse_star_records(once);
    const std::string twice = serialize_star_records(reloaded);
    REQUIRE(once == twice);
    REQUIRE(reloaded.stars.size() == rec.stars.size());
    REQUIRE(reloaded.stars[0].theta == rec.stars[0].theta);
    REQUIRE(reloaded.stars[0].phi == rec.stars[0].phi);
    REQUIRE(reloaded.t.has_value());
    REQUIRE(*reloaded.t == 0.25);
}

TEST_CASE("star records with absent metadata serialize null") {
    StarRecordFile rec;
    rec.two_s = 1;
    rec.stars.push_back({SetLabel::pseudo, 0.0, 0.0, 1});
    const std::string text = serialize_star_records(rec);
    REQUIRE(text.find("\"t\": null") != std::string::npos);
    const StarRecordFile reloaded = parse_star_records(text);
    REQUIRE_FALSE(reloaded.t.has_value());
    REQUIRE(serialize_star_records(reloaded) == text);
}

TEST_CASE("trajectory serialization") {
    SweepSpec spec;
    spec.variable = SweepVariable::time;
    spec.start = 0.0;
    spec.stop = 1.5;
    spec.steps = 7;
    spec.delta = 0.5;
    spec.varphi = 1.1;
    spec.family = StateFamily::one_half;
    const std::vector<TrajectoryRecord> records = run_sweep(spec);

    SECTION("CSV and JSON carry identical numeric content") {
        const std::vector<TrajectoryRecord> from_csv =
            parse_trajectory_csv(serialize_trajectory_csv(records));
        const std::vector<TrajectoryRecord> from_json =
            parse_trajectory_json(serialize_trajectory_json(records));
        REQUIRE(from_csv.size() == records.size());
        REQUIRE(from_json.size() == records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            REQUIRE(from_csv[i].t == records[i].t);
            REQUIRE(from_csv[i].theta == records[i].theta);
            REQUIRE(from_csv[i].phi == records[i].phi);
            REQUIRE(from_csv[i].set == records[i].set);
            REQUIRE(from_json[i].t == records[i].t);
            REQUIRE(from_json[i].theta == records[i].theta);
            REQUIRE(from_json[i].phi == records[i].phi);
            REQUIRE(from_json[i].set == records[i].set);
            REQUIRE(from_json[i].star_index == from_csv[i].star_index);
        }
    }
    SECTION("CSV header is pinned") {
        const std::string csv = serialize_trajectory_csv(records);
        REQUIRE(csv.rfind("t,varphi,delta,set,star_index,theta,phi\n", 0) == 0);
    }
    SECTION("bad CSV headers are rejected") {
        REQUIRE_THROWS_AS(parse_trajectory_csv("a,b,c\n1,2,3\n"), parse_error);
    }
}

TEST_CASE("SVG rendering") {
    SECTION("empty input still yields the sphere outline") {
        const std::string svg = render_bloch_svg({}, SphereView::front);
        REQUIRE(svg.rfind("<svg", 0) == 0);
        REQUIRE(svg.find("<circle") != std::string::npos);
        REQUIRE(svg.find("</svg>") != std::string::npos);
    }
    SECTION("bytes are deterministic") {
        std::vector<PlotPoint> points = {{SetLabel::upper, 0.3, 1.0},
                                         {SetLabel::lower, 2.0, 4.0},
                                         {SetLabel::pseudo, 1.0, 0.0}};
        REQUIRE(render_bloch_svg(points, SphereView::front) ==
                render_bloch_svg(points, SphereView::front));
        REQUIRE(render_bloch_svg(points, SphereView::front) !=
                render_bloch_svg(points, SphereView::right));
    }
    SECTION("north-pole star projects to the top of the sphere in front view") {
        const std::string svg = render_bloch_svg({{SetLabel::upper, 0.0, 0.0}}, SphereView::front);
        // center (240, 240), radius 200: the pole is at (240, 40)
        REQUIRE(svg.find("cx=\"240.0000\" cy=\"40.0000\"") != std::string::npos);
    }
    SECTION("prime-meridian stars sit on the vertical centerline in front view") {
        std::vector<PlotPoint> points;
        for (int i = 0; i <= 10; ++i) {
            points.push_back({SetLabel::pseudo, kPi * i / 20.0, 0.0});  // phi = 0 arc
        }
        const std::string svg = render_bloch_svg(points, SphereView::front);
        // every cross marker is centered at px = 240: arms span 235..245
        std::size_t pos = 0;
        int markers = 0;
        while ((pos = svg.find("<line x1=\"235.0000\"", pos)) != std::string::npos) {
            ++markers;
            pos += 1;
        }
        REQUIRE(markers == 2 * static_cast<int>(points.size()));
    }
    SECTION("hidden-hemisphere dots are hollow") {
        // phi = pi/2 faces away in front view? depth is x = sin(theta)cos(phi);
        // phi = pi gives x < 0: hidden
        const std::string visible =
            render_bloch_svg({{SetLabel::upper, kPi / 2, 0.0}}, SphereView::front);
        const std::string hidden =
            render_bloch_svg({{SetLabel::upper, kPi / 2, kPi}}, SphereView::front);
        REQUIRE(visible.find("fill=\"#d62728\"") != std::string::npos);
        REQUIRE(hidden.find("fill=\"none\"") != std::string::npos);
    }
}
