#include "cli/report.hpp"

#include "cli/config.hpp"

namespace harmlab::cli {

using nlohmann::json;

namespace {

json coeffs(const CPoly& p) {
    json a = json::array();
    for (const cplx c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

json points(const std::vector<cplx>& v) {
    json a = json::array();
    for (const cplx z : v) a.push_back(to_json(z));
    return a;
}

json lattice(const std::vector<LatticePoint>& v) {
    json a = json::array();
    for (const LatticePoint& p : v) a.push_back(json::array({p.i, p.j}));
    return a;
}

}  // namespace

json polyline_json(const std::vector<cplx>& pts) {
    json re = json::array(), im = json::array();
    for (const cplx z : pts) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"re", re}, {"im", im}};
}

json to_json(const HarmonicPoly& h) { return {{"p", coeffs(h.p())}, {"q", coeffs(h.q())}}; }

json to_json(const RootSet& rs) {
    json roots = json::array();
    for (const Root& r : rs.roots)
        roots.push_back({{"z", to_json(r.location)},
                         {"orientation", to_string(r.orientation)},
                         {"winding", r.winding},
                         {"residual", r.residual},
                         {"cert_radius", r.cert_radius},
                         {"certified", r.certified}});
    return {{"count", rs.size()},
            {"n_plus", rs.n_plus},
            {"n_minus", rs.n_minus},
            {"certified", rs.certified},
            {"degree", rs.degree},
            {"outer_winding", rs.outer_winding},
            {"enclosure_radius", rs.enclosure_radius},
            {"exclusion_complete", rs.exclusion_complete},
            {"singular_detected", rs.singular_detected},
            {"note", rs.note},
            {"roots", roots}};
}

json to_json(const CurveComponent& c) {
    json line = polyline_json(c.polyline());
    json theta = json::array();
    for (const LemniscateSample& s : c.samples) theta.push_back(s.theta);
    line["theta"] = theta;
    json crit = json::array();
    for (const CriticalPoint& cp : c.critical_points)
        crit.push_back({{"z", to_json(cp.z)}, {"theta", cp.theta}, {"order", cp.order}});
    return {{"component_id", c.component_id},
            {"zero_count", c.zero_count},
            {"hole", c.hole},
            {"theta_start", c.theta_start},
            {"signed_area", c.signed_area()},
            {"critical_points", crit},
            {"polyline", line}};
}

json to_json(const CausticCurve& c) {
    json cusps = json::array();
    for (const Cusp& k : c.cusps)
        cusps.push_back({{"theta", k.theta},
                         {"z", to_json(k.z)},
                         {"image", to_json(k.image)},
                         {"kind", to_string(k.kind)},
                         {"direction", k.direction}});
    json line = polyline_json(c.image_samples);
    line["theta"] = c.theta;
    return {{"component_id", c.component_id},
            {"zero_count", c.zero_count},
            {"hole", c.hole},
            {"psi_increment", c.psi_increment},
            {"cusp_count", c.cusps.size()},
            {"cusps", cusps},
            {"image", line}};
}

json to_json(const LatticePolygon& p) {
    return {{"hull", lattice(p.hull)}, {"support", lattice(p.support)}, {"twice_area", p.twice_area()}};
}

json to_json(const GenericityReport& g) {
    return {{"generic", g.generic},
            {"vertices_a", lattice(g.vertices_a)},
            {"vertices_b", lattice(g.vertices_b)},
            {"missing", lattice(g.missing)}};
}

json to_json(const BernsteinReport& b) {
    return {{"off_axes", b.off_axes}, {"mixed_area", b.mixed_area}, {"holds", b.holds}};
}

json to_json(const ExcessRecord& r) {
    json j = {{"n", r.n},
              {"m", r.m},
              {"a", to_json(r.a)},
              {"b", to_json(r.b)},
              {"total", r.total},
              {"lower_bound", construction_lower_bound(r.n, r.m)},
              {"excessive", r.excessive},
              {"certified", r.certified}};
    if (!r.certified) j["status"] = "INCONCLUSIVE";
    return j;
}

json to_json(const ScanTable& t) {
    json rows = json::array();
    for (const ScanRow& r : t.rows) {
        json row = to_json(r.record);
        row["wilmshurst_count"] = r.wilmshurst_count;
        rows.push_back(row);
    }
    return {{"rows", rows}, {"jumps", t.jumps}, {"conclusive", t.conclusive}};
}

json to_json(const ConstructionResult& c) {
    json t = json::array();
    for (const cplx z : c.t_coeffs) t.push_back(to_json(z));
    return {{"n", c.params.n},
            {"m", c.params.m},
            {"a", to_json(c.params.a)},
            {"b", to_json(c.params.b)},
            {"S", coeffs(c.S)},
            {"T", coeffs(c.T)},
            {"p", coeffs(c.p)},
            {"q", coeffs(c.q)},
            {"t", t},
            {"degree_defect", c.degree_defect}};
}

json to_json(const TwoZeroCertificate& c) {
    return {{"phi", c.phi}, {"A", to_json(c.A)}, {"zeros_found", points(c.zeros_found)}, {"component_id", c.component_id}};
}

json to_json(const InflectionReport& r) {
    json arcs = json::array();
    for (const ArcModel& a : r.arcs)
        arcs.push_back({{"direction", to_json(a.direction)}, {"quadratic", to_json(a.quadratic)}, {"curvature", a.curvature}});
    return {{"perpendicular", r.perpendicular},
            {"no_inflection", r.no_inflection},
            {"values", {r.values[0], r.values[1]}},
            {"L2", to_json(r.L2)},
            {"L3", to_json(r.L3)},
            {"arcs", arcs}};
}

}  // namespace harmlab::cli
