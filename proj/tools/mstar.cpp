// Command-line surface: single-shot star computation from a state file,
// parameter/time sweeps, invariant validation, and SVG Bloch-sphere
// plots.
//
// Exit codes: 0 success, 1 validation/internal failure, 2 usage or parse
// error, 3 invalid state.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "mstar/io.hpp"
#include "mstar/mixedspin.hpp"
#include "mstar/svg.hpp"
#include "mstar/sweep.hpp"
#include "mstar/validation.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidState = 3;

int cmd_stars(const std::string& input, const std::string& output) {
    const mstar::MixedSpinState state = mstar::load_state_file(input);
    const mstar::FullRepresentation rep = mstar::full_representation(state);
    mstar::save_star_records(output,
                             mstar::star_records_from_representation(state.twice_s, rep));
    return 0;
}

int cmd_sweep(const mstar::SweepSpec& spec, const std::string& format,
              const std::string& output) {
    const std::vector<mstar::TrajectoryRecord> records = mstar::run_sweep(spec);
    const std::string payload = format == "csv" ? mstar::serialize_trajectory_csv(records)
                                                : mstar::serialize_trajectory_json(records);
    mstar::detail::write_file(output, payload);
    return 0;
}

int cmd_validate(const std::string& scope, bool corrupt_coupling) {
    mstar::ValidationHooks hooks;
    if (corrupt_coupling) {
        hooks.tamper_coupling = [](Eigen::MatrixXd& u) { u(0, 0) += 1e-3; };
    }
    const std::vector<mstar::CheckResult> results = mstar::run_validation(scope, hooks);
    std::size_t width = 0;
    for (const mstar::CheckResult& r : results) {
        width = std::max(width, r.module.size() + r.name.size() + 1);
    }
    bool all_pass = true;
    for (const mstar::CheckResult& r : results) {
        const std::string label = r.module + "." + r.name;
        std::printf("%-*s  %s  %s\n", static_cast<int>(width), label.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("%zu checks, %s\n", results.size(), all_pass ? "all passed" : "FAILURES above");
    return all_pass ? 0 : kExitValidation;
}

int cmd_plot(const std::string& input, const std::string& view_name, const std::string& output) {
    const mstar::SphereView view =
        view_name == "right" ? mstar::SphereView::right : mstar::SphereView::front;
    const std::string text = mstar::detail::read_file(input);

    std::vector<mstar::PlotPoint> points;
    if (text.rfind(mstar::kTrajectoryCsvHeader, 0) == 0) {
        points = mstar::plot_points_from_trajectory(mstar::parse_trajectory_csv(text));
    } else {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw mstar::parse_error(std::string("plot input parse error: ") + e.what());
        }
        if (doc.is_array()) {
            points = mstar::plot_points_from_trajectory(mstar::parse_trajectory_json(text));
        } else if (doc.is_object() && doc.contains("stars")) {
            points = mstar::plot_points_from_star_records(mstar::parse_star_records(text));
        } else {
            throw mstar::parse_error("plot input is neither a star record nor a trajectory file");
        }
    }
    mstar::detail::write_file(output, mstar::render_bloch_svg(points, view));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Majorana star representation of mixed-spin (s, 1/2) states"};
    app.require_subcommand(1);

    std::string stars_input, stars_output;
    CLI::App* stars = app.add_subcommand("stars", "compute the 4s+1 star set of a state file");
    stars->add_option("--input", stars_input, "state JSON file")->required();
    stars->add_option("--output", stars_output, "star record JSON file")->required();

    std::string family = "half_half", variable = "t", format = "json";
    std::string sweep_input, sweep_output;
    double start = 0.0, stop = 1.0, delta = 0.0, fixed_varphi = 0.0, fixed_t = 0.0;
    int steps = 2;
    CLI::App* sweep = app.add_subcommand("sweep", "trace star trajectories over a grid");
    sweep->add_option("--family", family, "state family")
        ->check(CLI::IsMember({"half_half", "one_half", "file"}));
    sweep->add_option("--var", variable, "sweep variable")->check(CLI::IsMember({"t", "varphi"}));
    sweep->add_option("--start", start, "grid start")->required();
    sweep->add_option("--stop", stop, "grid stop")->required();
    sweep->add_option("--steps", steps, "grid points")->required();
    sweep->add_option("--delta", delta, "XXZ anisotropy");
    sweep->add_option("--varphi", fixed_varphi, "fixed varphi for time sweeps");
    sweep->add_option("--t", fixed_t, "fixed t for varphi sweeps");
    sweep->add_option("--input", sweep_input, "state file for --family file");
    sweep->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sweep->add_option("--output", sweep_output, "output file")->required();

    std::string scope = "all";
    bool corrupt_coupling = false;
    CLI::App* validate = app.add_subcommand("validate", "run module invariant suites");
    validate->add_option("--scope", scope, "module to validate (default all)");
    validate->add_flag("--corrupt-coupling", corrupt_coupling)->group("");  // test hook

    std::string plot_input, plot_view = "front", plot_output;
    CLI::App* plot = app.add_subcommand("plot", "render stars or trajectories as SVG");
    plot->add_option("--input", plot_input, "star record or trajectory file")->required();
    plot->add_option("--view", plot_view, "projection")
        ->check(CLI::IsMember({"front", "right"}));
    plot->add_option("--output", plot_output, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (stars->parsed()) {
            return cmd_stars(stars_input, stars_output);
        }
        if (sweep->parsed()) {
            mstar::SweepSpec spec;
            spec.variable = variable == "varphi" ? mstar::SweepVariable::varphi
                                                 : mstar::SweepVariable::time;
            spec.start = start;
            spec.stop = stop;
            spec.steps = steps;
            spec.delta = delta;
            spec.varphi = fixed_varphi;
            spec.t = fixed_t;
            if (family == "half_half") {
                spec.family = mstar::StateFamily::half_half;
            } else if (family == "one_half") {
                spec.family = mstar::StateFamily::one_half;
            } else {
                spec.family = mstar::StateFamily::file;
                if (sweep_input.empty()) {
                    std::cerr << "error: --family file requires --input\n";
                    return kExitUsage;
                }
                spec.file_state = mstar::load_state_file(sweep_input);
            }
            return cmd_sweep(spec, format, sweep_output);
        }
        if (validate->parsed()) {
            return cmd_validate(scope, corrupt_coupling);
        }
        if (plot->parsed()) {
            return cmd_plot(plot_input, plot_view, plot_output);
        }
    } catch (const mstar::invalid_state_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidState;
    } catch (const mstar::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        // zero/degenerate states surfaced by the numeric pipeline
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidState;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
