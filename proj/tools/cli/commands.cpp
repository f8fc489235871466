#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "cli/contour.hpp"
#include "cli/report.hpp"
#include "harmlab/caustic.hpp"
#include "harmlab/construct.hpp"
#include "harmlab/error.hpp"
#include "harmlab/lemniscate.hpp"
#include "harmlab/newton.hpp"
#include "harmlab/presets.hpp"

namespace harmlab::cli {

using nlohmann::json;

namespace {

constexpr const char* kPreserving = "#1f5fbf";
constexpr const char* kReversing = "#c0392b";
constexpr int kGammaGrid = 240;

json base_report(const RunConfig& c) {
    return {{"schema_version", kSchemaVersion}, {"command", c.command}, {"config", to_json(c)}, {"status", "ok"}};
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Layer roots_layer(const RootSet& rs) {
    Layer l{.kind = LayerKind::Roots};
    l.style.radius = 3.5;
    for (const Root& r : rs.roots) {
        l.points.push_back(r.location);
        Style s = l.style;
        s.fill = r.orientation == Orientation::Reversing ? kReversing : kPreserving;
        s.stroke = s.fill;
        if (r.orientation == Orientation::Singular) s.fill = "none";
        l.point_styles.push_back(s);
    }
    return l;
}

Layer omega_layer(const OmegaDecomposition& om) {
    Layer l{.kind = LayerKind::Lemniscate, .closed = true};
    l.style.stroke = "#7f8c8d";
    l.style.fill = "#f5d76e";
    l.style.opacity = 0.6;
    for (const CurveComponent& C : om.components) l.paths.push_back(C.polyline());
    return l;
}

// Zeros of f = p'/q': zeros of p' that q' does not share.
Layer f_zero_layer(const HarmonicPoly& h) {
    Layer l{.kind = LayerKind::ZerosOfF};
    l.style.fill = "#2c3e50";
    l.style.stroke = "#2c3e50";
    l.style.radius = 5.0;
    if (h.dp().degree() < 1) return l;
    for (const cplx z : all_roots(h.dp()))
        if (std::abs(eval(h.dq(), z)) > 1e-9 * (1.0 + h.dq().norm1())) l.points.push_back(z);
    return l;
}

Layer caustic_layer(const std::vector<CausticCurve>& ccs) {
    Layer l{.kind = LayerKind::Caustic, .closed = true};
    l.style.stroke = "#8e44ad";
    l.style.width = 1.2;
    for (const CausticCurve& cc : ccs) l.paths.push_back(cc.image_samples);
    return l;
}

Layer cusp_layer(const std::vector<CausticCurve>& ccs) {
    Layer l{.kind = LayerKind::Cusps};
    l.style.fill = "#e67e22";
    l.style.stroke = "#e67e22";
    l.style.radius = 3.0;
    for (const CausticCurve& cc : ccs)
        for (const Cusp& k : cc.cusps) l.points.push_back(k.image);
    return l;
}

Layer polygon_layer(const LatticePolygon& P, const char* colour, bool dashed) {
    Layer l{.kind = LayerKind::NewtonPolygon, .closed = true};
    l.style.stroke = colour;
    l.style.width = 1.5;
    l.style.dashed = dashed;
    l.style.radius = 2.5;
    Style dot = l.style;
    dot.fill = colour;
    std::vector<cplx> hull;
    for (const LatticePoint& v : P.hull) hull.emplace_back(static_cast<double>(v.i), static_cast<double>(v.j));
    l.paths.push_back(hull);
    for (const LatticePoint& v : P.support) {
        l.points.emplace_back(static_cast<double>(v.i), static_cast<double>(v.j));
        l.point_styles.push_back(dot);
    }
    return l;
}

std::optional<OmegaDecomposition> try_trace(const HarmonicPoly& h, json& notes) {
    try {
        return trace_lemniscate(h.f());
    } catch (const Error& e) {
        notes.push_back(std::string("lemniscate not drawn: ") + e.what());
        return std::nullopt;
    }
}

struct GammaCurves {
    std::vector<std::vector<cplx>> s, t;
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

// {Re S = 0} and {Im T = 0} over a box around the zeros; T in factored form.
GammaCurves gamma_curves(const ConstructionResult& cr, const RootSet& rs) {
    double x0 = std::min(cr.params.a.real(), cr.params.b.real()), x1 = std::max(cr.params.a.real(), cr.params.b.real());
    double y0 = std::min(cr.params.a.imag(), cr.params.b.imag()), y1 = std::max(cr.params.a.imag(), cr.params.b.imag());
    for (const Root& r : rs.roots) {
        x0 = std::min(x0, r.location.real());
        x1 = std::max(x1, r.location.real());
        y0 = std::min(y0, r.location.imag());
        y1 = std::max(y1, r.location.imag());
    }
    const double pad = std::max(0.3, 0.25 * std::max(x1 - x0, y1 - y0));
    x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
    const int k = cr.params.m + 1;
    const cplx b = cr.params.b;
    GammaCurves g{.x0 = x0, .x1 = x1, .y0 = y0, .y1 = y1};
    g.s = zero_level_curves([&](cplx z) { return eval(cr.S, z).real(); }, x0, x1, y0, y1, kGammaGrid, kGammaGrid);
    g.t = zero_level_curves([&](cplx z) { return (std::pow(z - b, k) * eval(cr.U, z)).imag(); }, x0, x1, y0, y1,
                            kGammaGrid, kGammaGrid);
    return g;
}

// Omega = {|p'| < |q'|} = {Re(S' conj T') < 0} shaded by row runs of grid
// cells. Tracing cannot resolve the high-order critical point of f at b, and
// this form stays accurate there with T' = (z - b)^m ((m + 1) U + (z - b) U').
Layer omega_cells(const ConstructionResult& cr, const GammaCurves& g) {
    Layer l{.kind = LayerKind::Lemniscate, .closed = true};
    l.style.stroke = "none";
    l.style.width = 0.0;
    l.style.fill = "#f5d76e";
    l.style.opacity = 0.6;
    const int m = cr.params.m;
    const cplx b = cr.params.b;
    const CPoly dS = derivative(cr.S), dU = derivative(cr.U);
    const auto inside = [&](cplx z) {
        const cplx dT = std::pow(z - b, m) * (static_cast<double>(m + 1) * eval(cr.U, z) + (z - b) * eval(dU, z));
        return (eval(dS, z) * std::conj(dT)).real() < 0.0;
    };
    const double hx = (g.x1 - g.x0) / kGammaGrid, hy = (g.y1 - g.y0) / kGammaGrid;
    for (int j = 0; j < kGammaGrid; ++j) {
        const double ya = g.y0 + j * hy, yb = ya + hy;
        for (int i = 0; i < kGammaGrid;) {
            if (!inside({g.x0 + (i + 0.5) * hx, ya + 0.5 * hy})) {
                ++i;
                continue;
            }
            const int start = i;
            while (i < kGammaGrid && inside({g.x0 + (i + 0.5) * hx, ya + 0.5 * hy})) ++i;
            const double xa = g.x0 + start * hx, xb = g.x0 + i * hx;
            l.paths.push_back({{xa, ya}, {xb, ya}, {xb, yb}, {xa, yb}});
        }
    }
    return l;
}

Panel gamma_panel(const ConstructionRoots& cr, const GammaCurves& g, const std::string& title) {
    Panel panel{.title = title};
    Layer ls{.kind = LayerKind::GammaCurves, .paths = g.s};
    ls.style.stroke = kPreserving;
    Layer lt{.kind = LayerKind::GammaCurves, .paths = g.t};
    lt.style.stroke = kReversing;
    lt.style.dashed = true;
    panel.layers = {ls, lt, roots_layer(cr.roots)};
    return panel;
}

std::vector<CausticCurve> all_caustics(const HarmonicPoly& h, const OmegaDecomposition& om, int samples_per_turn) {
    std::vector<CausticCurve> out;
    for (const CurveComponent& C : om.components)
        out.push_back(detect_cusps(h, harmonic_parametrization(h.f(), C, samples_per_turn)));
    return out;
}

int uncertified_exit(const RunConfig& c, bool certified) {
    return certified || c.allow_uncertified ? kOk : kUncertified;
}

CommandResult cmd_roots(const RunConfig& c) {
    CommandResult res{base_report(c)};
    json notes = json::array();
    std::optional<HarmonicPoly> h;
    RootSet rs;
    const auto k = c.p.empty() ? resolve_construction(c) : std::nullopt;
    if (k) {
        ConstructionRoots cr = count_construction_roots(*k);
        h = cr.construction.harmonic();
        rs = std::move(cr.roots);
    } else {
        h = resolve_harmonic(c);
        rs = find_all_zeros(*h);
        if (!rs.certified && c.nudge) {
            std::mt19937_64 rng(c.seed);
            std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
            const double size = 1e-9 * (1.0 + h->p().norm1() + h->q().norm1());
            for (int attempt = 0; attempt < 3; ++attempt) {
                const cplx shift = std::polar(size, angle(rng));
                HarmonicPoly moved(h->p() - CPoly::constant(shift), h->q());
                RootSet again = find_all_zeros(moved);
                if (!again.certified) continue;
                res.report["nudge"] = {{"c", to_json(shift)}, {"attempt", attempt + 1}};
                h = std::move(moved);
                rs = std::move(again);
                break;
            }
        }
    }
    res.report["harmonic"] = to_json(*h);
    res.report["roots"] = to_json(rs);
    if (!rs.certified) res.report["status"] = "uncertified";
    res.exit_code = uncertified_exit(c, rs.certified);
    if (c.svg) {
        Panel panel{.title = "zeros"};
        if (const auto om = try_trace(*h, notes)) panel.layers.push_back(omega_layer(*om));
        panel.layers.push_back(roots_layer(rs));
        panel.layers.push_back(f_zero_layer(*h));
        res.svg = render_svg({{panel}});
    }
    res.report["notes"] = notes;
    return res;
}

CommandResult cmd_construct(const RunConfig& c) {
    const auto k = resolve_construction(c);
    if (!k) throw Error(ErrorKind::InvalidArgument, "construct needs a construction record or preset");
    CommandResult res{base_report(c)};
    const ConstructionRoots cr = count_construction_roots(*k);
    const GammaCurves g = gamma_curves(cr.construction, cr.roots);
    json gs = json::array(), gt = json::array();
    for (const auto& line : g.s) gs.push_back(polyline_json(line));
    for (const auto& line : g.t) gt.push_back(polyline_json(line));
    res.report["construction"] = to_json(cr.construction);
    res.report["roots"] = to_json(cr.roots);
    res.report["lower_bound"] = construction_lower_bound(k->n, k->m);
    res.report["on_both_curves"] = cr.on_both_curves;
    res.report["gamma_S"] = gs;
    res.report["gamma_T"] = gt;
    if (!cr.roots.certified) res.report["status"] = "uncertified";
    res.exit_code = uncertified_exit(c, cr.roots.certified);
    if (c.svg) res.svg = render_svg({{gamma_panel(cr, g, "Re S = 0 and Im T = 0")}});
    return res;
}

CommandResult cmd_experiment(const RunConfig& c) {
    CommandResult res{base_report(c)};
    const ScanTable t = conjecture_scan(c.n_max, c.eps.value_or(default_experiment_eps()));
    res.report["table"] = to_json(t);
    if (!t.conclusive) res.report["status"] = "INCONCLUSIVE";
    res.exit_code = uncertified_exit(c, t.conclusive);
    return res;
}

CommandResult cmd_caustic(const RunConfig& c) {
    CommandResult res{base_report(c)};
    const HarmonicPoly h = resolve_harmonic(c);
    const RationalFn f = h.f();
    const OmegaDecomposition om = trace_lemniscate(f);
    json comps = json::array(), crit = json::array(), common = json::array();
    for (const CurveComponent& C : om.components) comps.push_back(to_json(C));
    for (const CriticalPoint& cp : om.critical_points)
        crit.push_back({{"z", to_json(cp.z)}, {"theta", cp.theta}, {"order", cp.order}});
    for (const cplx z : om.denominator_zeros_on_curve) common.push_back(to_json(z));
    res.report["harmonic"] = to_json(h);
    res.report["omega"] = {{"region_count", om.region_count()},
                           {"total_zero_count", om.total_zero_count},
                           {"critical_points", crit},
                           {"denominator_zeros_on_curve", common},
                           {"contours", comps}};
    json caustics = json::array();
    std::vector<CausticCurve> drawn;
    for (std::size_t i = 0; i < om.components.size(); ++i) {
        if (c.contour >= 0 && static_cast<std::size_t>(c.contour) != i) continue;
        const CurveComponent hp = harmonic_parametrization(f, om.components[i], c.samples_per_turn);
        CausticCurve cc = detect_cusps(h, hp);
        const double min_ratio = min_curvature_ratio(curvature_ratio(h, hp));
        json e = to_json(cc);
        e["contour"] = i;
        e["min_curvature_ratio"] = finite_or_null(min_ratio);
        e["condition"] = min_ratio < -0.5;
        e["simply_connected"] = om.simply_connected(cc.component_id);
        caustics.push_back(e);
        drawn.push_back(std::move(cc));
    }
    res.report["caustics"] = caustics;
    if (c.svg) {
        Panel lem{.title = "sense-reversing region", .layers = {omega_layer(om), f_zero_layer(h)}};
        Panel cau{.title = "caustics", .layers = {caustic_layer(drawn), cusp_layer(drawn)}};
        res.svg = render_svg({{lem, cau}});
    }
    return res;
}

CommandResult cmd_newton(const RunConfig& c) {
    CommandResult res{base_report(c)};
    const HarmonicPoly h = resolve_harmonic(c);
    const ShiftedHarmonic sh = generic_shift(h);
    const auto [A, B] = realify(sh.h);
    const LatticePolygon pa = newton_polygon(A), pb = newton_polygon(B);
    const LatticePolygon sum = minkowski_sum(pa, pb);
    const RootSet rs = find_all_zeros(sh.h);
    res.report["harmonic"] = to_json(h);
    res.report["shift"] = sh.x0;
    res.report["genericity"] = to_json(sh.report);
    res.report["polygon_A"] = to_json(pa);
    res.report["polygon_B"] = to_json(pb);
    res.report["minkowski_sum"] = to_json(sum);
    res.report["mixed_area"] = mixed_area(pa, pb);
    res.report["roots"] = to_json(rs);
    if (rs.certified) {
        res.report["bernstein"] = to_json(bernstein_check(sh.h, rs));
    } else {
        res.report["status"] = "uncertified";
    }
    res.exit_code = uncertified_exit(c, rs.certified);
    if (c.svg) {
        Panel panel{.title = "Newton polygons of Re h and Im h", .lattice = true};
        panel.layers = {polygon_layer(pa, kPreserving, false), polygon_layer(pb, kReversing, true)};
        res.svg = render_svg({{panel}});
    }
    return res;
}

CommandResult cmd_two_zero(const RunConfig& c) {
    CommandResult res{base_report(c)};
    const HarmonicPoly h = resolve_harmonic(c);
    const RationalFn f = h.f();
    const OmegaDecomposition om = trace_lemniscate(f);
    const TwoZeroOptions opts{c.phi_steps, c.grid, c.samples_per_turn, c.require_condition};
    json results = json::array();
    std::optional<std::pair<std::size_t, TwoZeroCertificate>> first;
    for (std::size_t i = 0; i < om.components.size(); ++i) {
        const CurveComponent& C = om.components[i];
        if (c.contour >= 0 ? static_cast<std::size_t>(c.contour) != i : (C.zero_count != 1 || C.hole)) continue;
        json e = {{"contour", i}, {"component_id", C.component_id}};
        try {
            const TwoZeroScan scan = two_zero_scan(h, om, i, opts);
            std::map<int, int> hist;
            for (const int n : scan.cusp_counts) ++hist[n];
            json hj = json::object();
            for (const auto& [cusps, times] : hist) hj[std::to_string(cusps)] = times;
            e["min_curvature_ratio"] = finite_or_null(scan.min_ratio);
            e["steps_scanned"] = scan.steps_scanned;
            e["cusp_histogram"] = hj;
            if (scan.certificate) {
                e["status"] = "certified";
                e["certificate"] = to_json(*scan.certificate);
                if (!first) first.emplace(i, *scan.certificate);
            } else {
                e["status"] = "not_found";
            }
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::AssumptionFailed) throw;
            e["status"] = "rejected";
            e["reason"] = err.what();
        }
        results.push_back(e);
    }
    res.report["harmonic"] = to_json(h);
    res.report["contours"] = results;
    res.report["status"] = first ? "certified" : "not_found";
    if (c.svg) {
        Panel lem{.title = "sense-reversing region", .layers = {omega_layer(om), f_zero_layer(h)}};
        FigureSpec fig{{lem}};
        if (first) {
            const auto& [i, cert] = *first;
            const HarmonicPoly rot(std::polar(1.0, cert.phi) * h.p(), h.q());
            const CausticCurve cc = detect_cusps(rot, harmonic_parametrization(f, om.components[i], c.samples_per_turn));
            Layer deep{.kind = LayerKind::Roots, .points = {-cert.A}};
            deep.style.fill = kReversing;
            deep.style.stroke = kReversing;
            fig.panels.push_back({.title = "caustic at the certificate",
                                  .layers = {caustic_layer({cc}), cusp_layer({cc}), deep}});
        }
        res.svg = render_svg(fig);
    }
    return res;
}

json figure_summary(const FigureSpec& fig) {
    json panels = json::array();
    for (const Panel& p : fig.panels) {
        json layers = json::array();
        for (const Layer& l : p.layers)
            layers.push_back({{"kind", to_string(l.kind)}, {"paths", l.paths.size()}, {"points", l.points.size()}});
        panels.push_back({{"title", p.title}, {"layers", layers}});
    }
    return panels;
}

CommandResult cmd_render(const RunConfig& c) {
    CommandResult res{base_report(c)};
    const FigureSpec fig = paper_figure(c.preset, c.seed);
    res.report["panels"] = figure_summary(fig);
    res.svg = render_svg(fig);
    return res;
}

Panel polygon_panel(int n, std::uint64_t seed) {
    const ShiftedHarmonic sh = generic_shift(random_real_instance(n, seed));
    const auto [A, B] = realify(sh.h);
    Panel panel{.title = "n = " + std::to_string(n), .lattice = true};
    panel.layers = {polygon_layer(newton_polygon(A), kPreserving, false),
                    polygon_layer(newton_polygon(B), kReversing, true)};
    return panel;
}

Panel construction_panel(const ConstructionParams& k, const std::string& title, bool with_omega) {
    const ConstructionRoots cr = count_construction_roots(k);
    const GammaCurves g = gamma_curves(cr.construction, cr.roots);
    Panel panel = gamma_panel(cr, g, title);
    if (with_omega) panel.layers = {omega_cells(cr.construction, g), roots_layer(cr.roots)};
    return panel;
}

Panel petals_panel(double theta, const std::string& title) {
    const HarmonicPoly h = petals_polynomial(theta);
    const std::vector<CausticCurve> ccs = all_caustics(h, trace_lemniscate(h.f()), 1024);
    return {.title = title, .layers = {caustic_layer(ccs), cusp_layer(ccs)}};
}

}  // namespace

FigureSpec paper_figure(const std::string& preset, std::uint64_t seed) {
    if (preset == "paper-fig-1") {
        const HarmonicPoly h = figure1_polynomial();
        Panel panel{.title = "zeros and sense-reversing region"};
        panel.layers = {omega_layer(trace_lemniscate(h.f())), roots_layer(find_all_zeros(h)), f_zero_layer(h)};
        return {{panel}};
    }
    if (preset == "paper-fig-2") return {{polygon_panel(6, seed), polygon_panel(5, seed)}};
    if (preset == "paper-fig-3")
        return {{construction_panel(figure3_left(), "n = 4, m = 2", false),
                 construction_panel(figure3_right(), "n = 5, m = 2", false)}};
    if (preset == "paper-fig-4")
        return {{construction_panel({9, 7, cplx(0.0, 0.0), cplx(1.1, -0.1)}, "n = 9, m = 7", true)}};
    if (preset == "paper-fig-5") {
        const HarmonicPoly h = petals_polynomial(0.0);
        Panel lem{.title = "sense-reversing region",
                  .layers = {omega_layer(trace_lemniscate(h.f())), f_zero_layer(h)}};
        return {{lem, petals_panel(0.0, "theta = 0"), petals_panel(std::numbers::pi / 6, "theta = pi / 6")}};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown figure preset '" + preset + "'");
}

CommandResult run_command(const RunConfig& c) {
    if (c.command == "roots") return cmd_roots(c);
    if (c.command == "construct") return cmd_construct(c);
    if (c.command == "experiment") return cmd_experiment(c);
    if (c.command == "caustic") return cmd_caustic(c);
    if (c.command == "newton") return cmd_newton(c);
    if (c.command == "two-zero-search") return cmd_two_zero(c);
    if (c.command == "render") return cmd_render(c);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + c.command + "'");
}

CommandResult error_result(const RunConfig& c, const std::exception& e) {
    CommandResult res{base_report(c)};
    res.report["status"] = "error";
    res.report["message"] = e.what();
    res.exit_code = kNumerical;
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        res.report["error_kind"] = to_string(err->kind());
        if (err->kind() == ErrorKind::SingularZeroDetected) res.exit_code = kUncertified;
        else if (is_degenerate_input(err->kind())) res.exit_code = kDegenerate;
    }
    return res;
}

}  // namespace harmlab::cli
