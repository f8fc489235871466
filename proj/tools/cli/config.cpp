#include "cli/config.hpp"

#include "harmlab/error.hpp"
#include "harmlab/presets.hpp"

namespace harmlab::cli {

using nlohmann::json;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw Error(ErrorKind::InvalidArgument, "complex numbers are [re, im] pairs");
}

namespace {

std::vector<cplx> coeffs_from_json(const json& j) {
    std::vector<cplx> out;
    for (const json& c : j) out.push_back(cplx_from_json(c));
    return out;
}

json coeffs_to_json(const std::vector<cplx>& c) {
    json a = json::array();
    for (const cplx z : c) a.push_back(to_json(z));
    return a;
}

template <class T>
void read(const json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig c;
    read(j, "command", c.command);
    read(j, "name", c.name);
    read(j, "preset", c.preset);
    if (j.contains("p")) c.p = coeffs_from_json(j.at("p"));
    if (j.contains("q")) c.q = coeffs_from_json(j.at("q"));
    if (j.contains("construction")) {
        const json& k = j.at("construction");
        ConstructionParams cp;
        cp.n = k.at("n").get<int>();
        cp.m = k.at("m").get<int>();
        cp.a = cplx_from_json(k.at("a"));
        cp.b = cplx_from_json(k.at("b"));
        c.construction = cp;
    }
    read(j, "n", c.n);
    read(j, "m", c.m);
    read(j, "n_max", c.n_max);
    if (j.contains("eps")) c.eps = cplx_from_json(j.at("eps"));
    read(j, "theta", c.theta);
    read(j, "q_scale", c.q_scale);
    read(j, "seed", c.seed);
    read(j, "phi_steps", c.phi_steps);
    read(j, "grid", c.grid);
    read(j, "samples_per_turn", c.samples_per_turn);
    read(j, "contour", c.contour);
    read(j, "require_condition", c.require_condition);
    read(j, "allow_uncertified", c.allow_uncertified);
    read(j, "nudge", c.nudge);
    read(j, "svg", c.svg);
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["name"] = c.name;
    j["preset"] = c.preset;
    j["p"] = coeffs_to_json(c.p);
    j["q"] = coeffs_to_json(c.q);
    if (c.construction)
        j["construction"] = {{"n", c.construction->n},
                             {"m", c.construction->m},
                             {"a", to_json(c.construction->a)},
                             {"b", to_json(c.construction->b)}};
    j["n"] = c.n;
    j["m"] = c.m;
    j["n_max"] = c.n_max;
    if (c.eps) j["eps"] = to_json(*c.eps);
    j["theta"] = c.theta;
    j["q_scale"] = c.q_scale;
    j["seed"] = c.seed;
    j["phi_steps"] = c.phi_steps;
    j["grid"] = c.grid;
    j["samples_per_turn"] = c.samples_per_turn;
    j["contour"] = c.contour;
    j["require_condition"] = c.require_condition;
    j["allow_uncertified"] = c.allow_uncertified;
    j["nudge"] = c.nudge;
    j["svg"] = c.svg;
    return j;
}

std::optional<ConstructionParams> resolve_construction(const RunConfig& c) {
    if (c.construction) return c.construction;
    if (c.preset == "figure3-left") return figure3_left();
    if (c.preset == "figure3-right") return figure3_right();
    if (c.preset == "figure4") return ConstructionParams{9, 7, cplx(0.0, 0.0), cplx(1.1, -0.1)};
    return std::nullopt;
}

HarmonicPoly resolve_harmonic(const RunConfig& c) {
    if (!c.p.empty()) return HarmonicPoly(CPoly(c.p), CPoly(c.q));
    if (const auto k = resolve_construction(c)) return solve_T(*k).harmonic();
    const std::string& s = c.preset;
    if (s == "figure1") return figure1_polynomial(c.q_scale);
    if (s == "figure1-separated") return figure1_polynomial(kFigure1Separation);
    if (s == "petals") return petals_polynomial(c.theta);
    if (s == "random-real") return random_real_instance(c.n, c.seed);
    if (s == "random-complex") return random_complex_instance(c.n, c.m, c.seed);
    if (s == "random-m1") return random_m1_instance(c.seed);
    if (s == "perturbed-quartic") return perturbed_quartic(c.seed);
    if (s == "wilmshurst") return wilmshurst_instance(c.n, 1e-3, c.seed);
    if (s.empty()) throw Error(ErrorKind::InvalidArgument, "no polynomial given: set p and q or a preset");
    throw Error(ErrorKind::InvalidArgument, "unknown preset '" + s + "'");
}

}  // namespace harmlab::cli
