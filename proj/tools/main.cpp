#include <filesystem>
#include <fstream>
#include <iostream>
#include <utility>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace fs = std::filesystem;
using harmlab::cli::RunConfig;

namespace {

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeros, lemniscates and caustics of harmonic polynomials"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path, out_dir, preset, name;
    bool svg = false, allow_uncertified = false, nudge = false, no_condition = false;
    std::uint64_t seed = 0;
    int phi_steps = 0, grid = 0, contour = 0, n = 0, n_max = 0;
    double theta = 0.0;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "directory for <name>.json and <name>.svg");
    app.add_flag("--svg", svg, "also render an SVG figure");
    app.add_option("--seed", seed, "seed for generated inputs");
    app.add_flag("--allow-uncertified", allow_uncertified, "exit 0 on uncertified results");
    app.add_flag("--nudge", nudge, "retry an uncertified root search with h - c, |c| ~ 1e-9");
    app.add_option("--phi-steps", phi_steps, "phi steps of the two-zero scan");
    app.add_option("--grid", grid, "winding grid of the two-zero scan");
    app.add_option("--preset", preset, "named input or figure");
    app.add_option("--name", name, "output file stem");
    app.add_option("--contour", contour, "restrict to one lemniscate contour");
    app.add_option("-n,--degree", n, "degree for generated presets");
    app.add_option("--n-max", n_max, "largest n of the experiment table");
    app.add_option("--theta", theta, "theta of the petals preset");
    app.add_flag("--no-condition", no_condition, "scan components that fail the curvature condition");

    const std::pair<const char*, const char*> commands[] = {
        {"roots", "certified zeros of h = p + conj(q)"},
        {"construct", "S/T construction and its zeros"},
        {"experiment", "excess zero counts for m = n - 2 up to --n-max"},
        {"caustic", "lemniscate contours, caustics and cusps"},
        {"newton", "Newton polygons and the mixed-area bound"},
        {"two-zero-search", "look for two zeros in a single-zero component"},
        {"render", "SVG figure for a figure preset"},
    };
    for (const auto& [cmd, desc] : commands) app.add_subcommand(cmd, desc);

    CLI11_PARSE(app, argc, argv);

    RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            config = harmlab::cli::config_from_json(nlohmann::json::parse(in));
        }
    } catch (const std::exception& e) {
        std::cerr << "harmlab: bad config: " << e.what() << "\n";
        return harmlab::cli::kDegenerate;
    }
    if (!app.get_subcommands().empty()) config.command = app.get_subcommands().front()->get_name();
    if (config.command.empty()) {
        std::cerr << "harmlab: no command given\n" << app.help();
        return harmlab::cli::kDegenerate;
    }
    if (app.count("--svg")) config.svg = svg;
    if (app.count("--seed")) config.seed = seed;
    if (app.count("--allow-uncertified")) config.allow_uncertified = allow_uncertified;
    if (app.count("--nudge")) config.nudge = nudge;
    if (app.count("--phi-steps")) config.phi_steps = phi_steps;
    if (app.count("--grid")) config.grid = grid;
    if (app.count("--preset")) config.preset = preset;
    if (app.count("--name")) config.name = name;
    if (app.count("--contour")) config.contour = contour;
    if (app.count("--degree")) config.n = n;
    if (app.count("--n-max")) config.n_max = n_max;
    if (app.count("--theta")) config.theta = theta;
    if (app.count("--no-condition")) config.require_condition = false;
    if (config.name.empty()) config.name = config.preset.empty() ? config.command : config.preset;

    harmlab::cli::CommandResult res;
    try {
        res = harmlab::cli::run_command(config);
    } catch (const std::exception& e) {
        res = harmlab::cli::error_result(config, e);
        std::cerr << "harmlab: " << e.what() << "\n";
    }

    const std::string json_text = res.report.dump(2) + "\n";
    try {
        if (out_dir.empty()) {
            std::cout << json_text;
            if (res.svg) write_file(config.name + ".svg", *res.svg);
        } else {
            fs::create_directories(out_dir);
            write_file(fs::path(out_dir) / (config.name + ".json"), json_text);
            if (res.svg) write_file(fs::path(out_dir) / (config.name + ".svg"), *res.svg);
        }
    } catch (const std::exception& e) {
        std::cerr << "harmlab: " << e.what() << "\n";
        return harmlab::cli::kNumerical;
    }
    return res.exit_code;
}
