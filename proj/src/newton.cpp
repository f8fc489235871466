#include "harmlab/newton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "harmlab/error.hpp"

namespace harmlab {

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) noexcept {
    return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

// 0 for edge directions in [0, pi), 1 for [pi, 2 pi).
int half_plane(const LatticePoint& e) noexcept { return (e.j < 0 || (e.j == 0 && e.i < 0)) ? 1 : 0; }

bool angle_less(const LatticePoint& a, const LatticePoint& b) noexcept {
    const int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return a.i * b.j - a.j * b.i > 0;
}

// Hull rotated to start at the lowest (then leftmost) vertex, so that edge
// angles increase through [0, 2 pi).
std::vector<LatticePoint> from_bottom(const std::vector<LatticePoint>& hull) {
    const auto it = std::min_element(hull.begin(), hull.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return a.j != b.j ? a.j < b.j : a.i < b.i;
    });
    std::vector<LatticePoint> out(it, hull.end());
    out.insert(out.end(), hull.begin(), it);
    return out;
}

std::vector<LatticePoint> edges(const std::vector<LatticePoint>& v) {
    std::vector<LatticePoint> e;
    if (v.size() < 2) return e;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const LatticePoint& a = v[k];
        const LatticePoint& b = v[(k + 1) % v.size()];
        e.push_back({b.i - a.i, b.j - a.j});
    }
    return e;
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int t = 1; t <= k; ++t) c = c * (n - k + t) / t;
    return std::round(c);
}

cplx i_power(int k) noexcept {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

std::vector<LatticePoint> sorted_vertices(const LatticePolygon& P) {
    std::vector<LatticePoint> v = P.hull;
    std::sort(v.begin(), v.end());
    return v;
}

bool has_real_coefficients(const HarmonicPoly& h) {
    return h.p().has_real_coefficients(1e-12) && h.q().has_real_coefficients(1e-12);
}

}  // namespace

RPoly2::RPoly2(const std::map<LatticePoint, double>& terms) {
    double top = 0.0;
    for (const auto& [e, c] : terms) top = std::max(top, std::abs(c));
    const double drop = kDropRelative * top;
    for (const auto& [e, c] : terms)
        if (std::abs(c) > drop) terms_.emplace(e, c);
}

double RPoly2::coeff(long i, long j) const noexcept {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? 0.0 : it->second;
}

std::vector<LatticePoint> RPoly2::support() const {
    std::vector<LatticePoint> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
}

double RPoly2::operator()(double x, double y) const noexcept {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += c * std::pow(x, static_cast<double>(e.i)) * std::pow(y, static_cast<double>(e.j));
    return s;
}

long LatticePolygon::twice_area() const noexcept {
    long s = 0;
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const LatticePoint& a = hull[k];
        const LatticePoint& b = hull[(k + 1) % hull.size()];
        s += a.i * b.j - a.j * b.i;
    }
    return std::labs(s);
}

LatticePolygon convex_hull(std::vector<LatticePoint> points) {
    if (points.empty()) throw Error(ErrorKind::EmptySupport, "convex hull of an empty point set");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    LatticePolygon poly;
    poly.support = points;
    if (points.size() < 3) {
        poly.hull = points;
        return poly;
    }
    std::vector<LatticePoint> h(2 * points.size());
    std::size_t k = 0;
    for (const LatticePoint& p : points) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t t = points.size() - 1, lower = k + 1; t-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], points[t]) <= 0) --k;
        h[k++] = points[t];
    }
    h.resize(k - 1);
    poly.hull = std::move(h);
    return poly;
}

std::pair<RPoly2, RPoly2> realify(const HarmonicPoly& h) {
    // z^k = sum_j C(k, j) x^{k-j} (iy)^j; conj(q_k z^k) takes conj(q_k) (-i)^j.
    std::map<LatticePoint, cplx> c;
    const auto add = [&c](const CPoly& poly, bool conjugate) {
        for (int k = 0; k <= poly.degree(); ++k) {
            const cplx a = conjugate ? std::conj(poly[k]) : poly[k];
            if (a == cplx(0.0)) continue;
            for (int j = 0; j <= k; ++j) {
                const cplx ij = conjugate ? std::conj(i_power(j)) : i_power(j);
                c[{k - j, j}] += binomial(k, j) * a * ij;
            }
        }
    };
    add(h.p(), false);
    add(h.q(), true);
    std::map<LatticePoint, double> re, im;
    for (const auto& [e, v] : c) {
        re[e] = v.real();
        im[e] = v.imag();
    }
    return {RPoly2(re), RPoly2(im)};
}

LatticePolygon newton_polygon(const RPoly2& P) {
    if (P.is_zero()) throw Error(ErrorKind::EmptySupport, "Newton polygon of the zero polynomial");
    return convex_hull(P.support());
}

LatticePolygon minkowski_sum(const LatticePolygon& P, const LatticePolygon& Q) {
    if (P.hull.empty() || Q.hull.empty()) throw Error(ErrorKind::EmptySupport, "Minkowski sum with an empty polygon");
    const std::vector<LatticePoint> a = from_bottom(P.hull), b = from_bottom(Q.hull);
    const std::vector<LatticePoint> ea = edges(a), eb = edges(b);
    std::vector<LatticePoint> verts;
    LatticePoint cur{a[0].i + b[0].i, a[0].j + b[0].j};
    verts.push_back(cur);
    std::size_t ia = 0, ib = 0;
    while (ia < ea.size() || ib < eb.size()) {
        LatticePoint step;
        if (ib == eb.size() || (ia < ea.size() && angle_less(ea[ia], eb[ib]))) step = ea[ia++];
        else step = eb[ib++];
        cur = {cur.i + step.i, cur.j + step.j};
        verts.push_back(cur);
    }
    // The walk closes on its start; the hull pass drops it and any collinear vertex.
    LatticePolygon sum = convex_hull(verts);
    return sum;
}

double mixed_area(const LatticePolygon& P, const LatticePolygon& Q) {
    const long twice = minkowski_sum(P, Q).twice_area() - P.twice_area() - Q.twice_area();
    return 0.5 * static_cast<double>(twice);
}

double mixed_area(const RPoly2& P, const RPoly2& Q) { return mixed_area(newton_polygon(P), newton_polygon(Q)); }

std::pair<std::vector<LatticePoint>, std::vector<LatticePoint>> predicted_vertices(int n) {
    const long N = n;
    std::vector<LatticePoint> a, b;
    if (n % 2 == 0) {
        a = {{0, 0}, {0, N}, {N, 0}};
        b = {{0, 1}, {0, N - 1}, {1, N - 1}, {N - 1, 1}};
    } else {
        a = {{0, 0}, {0, N - 1}, {1, N - 1}, {N, 0}};
        b = {{0, 1}, {0, N}, {N - 1, 1}};
    }
    // Small n collapses some shapes (n = 2 gives a segment for B).
    return {sorted_vertices(convex_hull(a)), sorted_vertices(convex_hull(b))};
}

GenericityReport check_genericity(const HarmonicPoly& h) {
    if (!has_real_coefficients(h))
        throw Error(ErrorKind::NotRealCoefficients, "genericity check needs real coefficients");
    const auto [A, B] = realify(h);
    const auto [pa, pb] = predicted_vertices(h.n());
    GenericityReport rep;
    for (const LatticePoint& v : pa)
        if (A.coeff(v.i, v.j) == 0.0) rep.missing.push_back(v);
    for (const LatticePoint& v : pb)
        if (B.coeff(v.i, v.j) == 0.0) rep.missing.push_back(v);
    if (!A.is_zero()) rep.vertices_a = sorted_vertices(newton_polygon(A));
    if (!B.is_zero()) rep.vertices_b = sorted_vertices(newton_polygon(B));
    rep.generic = rep.missing.empty() && rep.vertices_a == pa && rep.vertices_b == pb;
    return rep;
}

ShiftedHarmonic generic_shift(const HarmonicPoly& h, int max_shift) {
    for (int s = 0; s <= max_shift; ++s) {
        const double x0 = s;
        HarmonicPoly shifted = s == 0 ? h
                                      : HarmonicPoly(CPoly(taylor_coefficients(h.p(), x0)),
                                                     CPoly(taylor_coefficients(h.q(), x0)));
        GenericityReport rep = check_genericity(shifted);
        if (rep.generic) return {std::move(shifted), x0, std::move(rep)};
    }
    throw Error(ErrorKind::AssumptionFailed, "no integer shift made the Newton polygons generic");
}

BernsteinReport bernstein_check(const HarmonicPoly& h, const RootSet& rs) {
    if (!has_real_coefficients(h))
        throw Error(ErrorKind::NotRealCoefficients, "Bernstein bound needs real coefficients");
    if (!rs.certified) throw Error(ErrorKind::InvalidArgument, "Bernstein check needs a certified root set");
    const auto [A, B] = realify(h);
    BernsteinReport rep;
    rep.off_axes = off_axes_count(rs);
    rep.mixed_area = (A.is_zero() || B.is_zero()) ? 0.0 : mixed_area(A, B);
    rep.holds = rep.off_axes <= rep.mixed_area;
    return rep;
}

}  // namespace harmlab
