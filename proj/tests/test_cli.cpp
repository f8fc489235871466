#include <cmath>
#include <regex>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/contour.hpp"
#include "cli/svg.hpp"
#include "doctest.h"
#include "harmlab/error.hpp"

using namespace harmlab;
using namespace harmlab::cli;

namespace {

RunConfig make(const std::string& command, const std::string& preset) {
    RunConfig c;
    c.command = command;
    c.preset = preset;
    c.name = preset;
    return c;
}

}  // namespace

TEST_CASE("config round-trips through JSON") {
    RunConfig c = make("two-zero-search", "perturbed-quartic");
    c.seed = 42;
    c.eps = cplx(0.001, -0.002);
    c.construction = ConstructionParams{5, 2, cplx(1.5, -0.5), cplx(-0.05, 0.92)};
    c.p = {1.0, cplx(0.0, 2.0)};
    c.require_condition = false;
    const nlohmann::json j = to_json(c);
    CHECK(to_json(config_from_json(j)) == j);
}

TEST_CASE("unknown inputs are rejected") {
    CHECK_THROWS_AS(resolve_harmonic(make("roots", "no-such-preset")), Error);
    CHECK_THROWS_AS(resolve_harmonic(make("roots", "")), Error);
    CHECK_THROWS_AS(run_command(make("frobnicate", "figure1")), Error);
}

TEST_CASE("roots command") {
    SUBCASE("p = z, q = 0") {
        RunConfig c = make("roots", "");
        c.p = {0.0, 1.0};
        const CommandResult r = run_command(c);
        CHECK(r.exit_code == kOk);
        CHECK(r.report.at("roots").at("count") == 1);
        CHECK(r.report.at("schema_version") == kSchemaVersion);
    }
    SUBCASE("construction preset") {
        const CommandResult r = run_command(make("roots", "figure3-left"));
        CHECK(r.report.at("roots").at("count") == 12);
    }
    SUBCASE("singular zero is uncertified") {
        RunConfig c = make("roots", "");
        c.p = {-1.0, 3.0, -3.0, 2.0};  // z^3 + (z - 1)^3
        c.q = {1.0, -3.0, 3.0};        // z^3 - (z - 1)^3
        CHECK(run_command(c).exit_code == kUncertified);
        c.allow_uncertified = true;
        const CommandResult r = run_command(c);
        CHECK(r.exit_code == kOk);
        CHECK(r.report.at("status") == "uncertified");
    }
}

TEST_CASE("error reports carry exit codes") {
    const RunConfig c = make("roots", "nothing");
    const Error bad(ErrorKind::InvalidArgument, "x");
    const Error numeric(ErrorKind::TraceStall, "y");
    const Error singular(ErrorKind::SingularZeroDetected, "z");
    CHECK(error_result(c, bad).exit_code == kDegenerate);
    CHECK(error_result(c, numeric).exit_code == kNumerical);
    CHECK(error_result(c, singular).exit_code == kUncertified);
    CHECK(error_result(c, bad).report.at("status") == "error");
}

TEST_CASE("construct command emits both curve families") {
    RunConfig c = make("construct", "figure3-right");
    c.svg = true;
    const CommandResult r = run_command(c);
    CHECK(r.report.at("roots").at("count") == 15);
    CHECK(r.report.at("lower_bound") == 11);
    CHECK_FALSE(r.report.at("gamma_S").empty());
    CHECK_FALSE(r.report.at("gamma_T").empty());
    REQUIRE(r.svg.has_value());
    CHECK(r.svg->find("gamma_curves") != std::string::npos);
}

TEST_CASE("caustic command on the petals") {
    RunConfig c = make("caustic", "petals");
    c.svg = true;
    const CommandResult r = run_command(c);
    const auto& cs = r.report.at("caustics");
    REQUIRE(cs.size() == 3);
    for (const auto& e : cs) {
        CHECK(e.at("cusp_count") == 3);
        CHECK(e.at("psi_increment").get<double>() == doctest::Approx(3.0 * 3.141592653589793));
        CHECK(e.at("condition") == false);
    }
}

TEST_CASE("newton command") {
    RunConfig c = make("newton", "random-real");
    c.n = 5;
    const CommandResult r = run_command(c);
    CHECK(r.report.at("mixed_area") == 20.0);
    CHECK(r.report.at("bernstein").at("holds") == true);
}

TEST_CASE("two-zero search reports not_found with exit 0") {
    RunConfig c = make("two-zero-search", "");
    c.p = {0.0, 0.0, 0.5};
    c.q = {0.0, 1.0};
    c.phi_steps = 16;
    c.require_condition = false;
    const CommandResult r = run_command(c);
    CHECK(r.exit_code == kOk);
    CHECK(r.report.at("status") == "not_found");
    c.require_condition = true;
    CHECK(run_command(c).report.at("contours").at(0).at("status") == "rejected");
}

TEST_CASE("figure presets exist and render deterministically") {
    for (int k = 1; k <= 5; ++k) {
        const RunConfig c = make("render", "paper-fig-" + std::to_string(k));
        const CommandResult a = run_command(c), b = run_command(c);
        REQUIRE(a.svg.has_value());
        CHECK(a.report.dump() == b.report.dump());
        CHECK(*a.svg == *b.svg);
        CHECK(a.svg->rfind("<?xml", 0) == 0);
    }
    CHECK_THROWS_AS(paper_figure("paper-fig-6", 1), Error);
}

TEST_CASE("svg coordinates stay inside the panel") {
    Panel p{.title = "t"};
    Layer l{.kind = LayerKind::Caustic, .paths = {{cplx(-3, 1), cplx(5, 2), cplx(0, -7)}}, .closed = true};
    p.layers.push_back(l);
    const std::string svg = render_svg({{p}, 200.0});
    const std::regex num("(-?[0-9]+\\.[0-9]{3})");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), num); it != std::sregex_iterator(); ++it) {
        const double v = std::stod(it->str());
        CHECK(v >= 0.0);
        CHECK(v <= 200.0);
    }
}

TEST_CASE("marching squares recovers a circle") {
    const auto lines = zero_level_curves([](cplx z) { return std::norm(z) - 1.0; }, -2, 2, -2, 2, 80, 80);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].size() > 100);
    for (const cplx z : lines[0]) CHECK(std::abs(std::abs(z) - 1.0) < 2e-3);
}
