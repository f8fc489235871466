#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmlab/construct.hpp"
#include "harmlab/hroots.hpp"
#include "json.hpp"

namespace harmlab::cli {

inline constexpr int kSchemaVersion = 1;

// Everything a run depends on. A report embeds its config, and re-running
// that config reproduces the report byte for byte.
struct RunConfig {
    std::string command;
    std::string name;    // output file stem; defaults to the command
    std::string preset;  // named input, see resolve_harmonic
    std::vector<cplx> p, q;
    std::optional<ConstructionParams> construction;
    int n = 4;      // degree for generated presets
    int m = 2;
    int n_max = 9;  // experiment
    std::optional<cplx> eps;
    double theta = 0.0;
    double q_scale = 1.0;
    std::uint64_t seed = 1;
    int phi_steps = 256;
    int grid = 96;
    int samples_per_turn = 1024;
    int contour = -1;  // -1 selects every candidate contour
    bool require_condition = true;
    bool allow_uncertified = false;
    bool nudge = false;
    bool svg = false;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

nlohmann::json to_json(cplx z);
cplx cplx_from_json(const nlohmann::json& j);

// Harmonic polynomial named by the config: explicit p and q, or one of the
// presets figure1, figure1-separated, petals, random-real, random-complex,
// random-m1, perturbed-quartic, wilmshurst. Construction presets
// (figure3-left, figure3-right, figure4) resolve to their expanded p, q.
// Throws InvalidArgument for an unknown or missing input.
HarmonicPoly resolve_harmonic(const RunConfig& c);

// The construction named by the config (its `construction` record or a
// construction preset), if any.
std::optional<ConstructionParams> resolve_construction(const RunConfig& c);

}  // namespace harmlab::cli
