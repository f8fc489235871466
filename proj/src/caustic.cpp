#include "harmlab/caustic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "harmlab/error.hpp"
#include "harmlab/simd.hpp"

namespace harmlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSignificant = 1e-7;  // |sin Psi| below this is treated as zero
constexpr double kLocateTol = 1e-8;
const cplx kI{0.0, 1.0};

double wrap_pi(double a) noexcept { return std::remainder(a, kTwoPi); }

// One entry of the Psi sequence along a contour: every sample, plus the two
// one-sided limits at each critical point.
struct PsiEntry {
    double theta = 0.0;
    double psi = 0.0;
    int jump = -1;  // index of the jump this entry is the "before" side of
};

struct PsiTrack {
    std::vector<PsiEntry> seq;     // starts at sample 0, excludes the terminal point
    std::vector<double> at_sample;
    std::vector<double> crit_theta;
    std::vector<cplx> crit_z;
    double increment = 0.0;
    double span = 0.0;
};

cplx velocity(const LemniscateSample& s) { return kI * s.f_val / s.fprime_val; }

// Continuous part of Psi without theta / 2: arg v + arg q' + pi / 2.
struct AngleFn {
    const CPoly* dq;
    double operator()(const LemniscateSample& s) const {
        return std::arg(velocity(s)) + std::arg(eval(*dq, s.z)) + 0.5 * kPi;
    }
};

double reduce(double t, double start, double span) {
    double r = std::fmod(t - start, span);
    if (r < 0.0) r += span;
    return start + r;
}

PsiTrack build_track(const HarmonicPoly& h, const CurveComponent& C) {
    if (!C.harmonic) throw Error(ErrorKind::InvalidArgument, "Psi needs a harmonic parametrization");
    const RationalFn f = h.f();
    const CPoly dq = h.dq();
    const AngleFn g{&dq};
    const std::function<double(const LemniscateSample&)> angle = g;
    const std::size_t n = C.samples.size();
    const double span = kTwoPi * C.zero_count;
    const double dt = span / static_cast<double>(n);

    struct Jump {
        double theta;
        cplx z;
        WedgeStructure wedge;
        double arg_dq;
    };
    std::vector<Jump> jumps;
    for (const CriticalPoint& cp : C.critical_points)
        jumps.push_back({reduce(cp.theta, C.theta_start, span), cp.z, wedge_structure(f, cp.z), std::arg(eval(dq, cp.z))});
    std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.theta < b.theta; });

    PsiTrack tr;
    tr.span = span;
    for (const Jump& j : jumps) {
        tr.crit_theta.push_back(j.theta);
        tr.crit_z.push_back(j.z);
    }
    tr.at_sample.assign(n, 0.0);

    // G is the unwrapped continuous part; raw values are principal.
    double G = 0.0;
    double g_raw = 0.0;
    std::size_t next_jump = 0;
    auto push = [&](double theta, int jump) { tr.seq.push_back({theta, G + 0.5 * theta, jump}); };

    const LemniscateSample& s0 = C.samples[0];
    if (s0.critical) throw Error(ErrorKind::InvalidArgument, "contour starts at a critical point");
    g_raw = g(s0);
    G = g_raw;
    tr.at_sample[0] = G + 0.5 * s0.theta;
    push(s0.theta, -1);

    for (std::size_t j = 0; j < n; ++j) {
        const double ta = C.theta_start + dt * static_cast<double>(j);
        const double tb = ta + dt;
        const std::size_t k = (j + 1) % n;
        const LemniscateSample& sb = C.samples[k];
        double ta_smooth = ta;
        bool landed_on_critical = false;
        while (next_jump < jumps.size() && jumps[next_jump].theta <= tb + 1e-12) {
            const Jump& J = jumps[next_jump];
            const WedgeStructure& w = J.wedge;
            // Arrival is along an odd ray, pointing into z0.
            const cplx from = C.samples[j].critical ? C.samples[(j + n - 1) % n].z : C.samples[j].z;
            const double dir = std::arg(from - J.z);
            int best = 1;
            double best_d = std::numeric_limits<double>::infinity();
            for (int r = 1; r < 2 * w.k; r += 2) {
                const double d = std::abs(wrap_pi(w.angles[static_cast<std::size_t>(r)] - dir));
                if (d < best_d) {
                    best_d = d;
                    best = r;
                }
            }
            const double before = w.angles[static_cast<std::size_t>(best)] - kPi + J.arg_dq + 0.5 * kPi;
            const double d = wrap_pi(before - g_raw);
            if (std::abs(d) > 0.5 * kPi)
                throw Error(ErrorKind::BranchJump, "Psi turns too far before a critical point; sample more densely");
            G += d;
            push(J.theta, static_cast<int>(next_jump));
            G += kPi * (w.k - 1) / w.k;
            g_raw = before + kPi * (w.k - 1) / w.k;
            push(J.theta, -1);
            ta_smooth = J.theta;
            landed_on_critical = std::abs(J.theta - tb) <= 1e-12;
            ++next_jump;
        }
        const bool closing = k == 0;
        if (landed_on_critical) {
            tr.at_sample[k] = G + 0.5 * tb;
            continue;
        }
        const double gb = g(sb);
        if (ta_smooth == ta) {
            G += angle_increment(f, C, angle, ta, g_raw, tb, gb);
        } else {
            const double d = wrap_pi(gb - g_raw);
            if (std::abs(d) > 0.5 * kPi)
                throw Error(ErrorKind::BranchJump, "Psi turns too far after a critical point; sample more densely");
            G += d;
        }
        g_raw = gb;
        if (closing) {
            tr.increment = G + 0.5 * tb - tr.at_sample[0];
        } else {
            tr.at_sample[k] = G + 0.5 * tb;
            push(tb, -1);
        }
    }
    return tr;
}

struct Crossing {
    std::size_t a, b;  // indices into the extended sequence
    long level;        // crossing of level * pi
    int direction;
};

// Extended sequence: seq followed by seq shifted by one period.
PsiEntry extended(const PsiTrack& tr, std::size_t i) {
    const std::size_t N = tr.seq.size();
    if (i < N) return tr.seq[i];
    PsiEntry e = tr.seq[i - N];
    e.theta += tr.span;
    e.psi += tr.increment;
    return e;
}

std::vector<Crossing> crossings(const PsiTrack& tr, double shift) {
    const std::size_t N = tr.seq.size();
    auto significant = [&](std::size_t i) { return std::abs(std::sin(extended(tr, i).psi + shift)) > kSignificant; };
    std::size_t s0 = 0;
    while (s0 < N && !significant(s0)) ++s0;
    std::vector<Crossing> out;
    if (s0 == N) return out;
    std::size_t a = s0;
    for (std::size_t i = s0 + 1; i <= s0 + N; ++i) {
        if (!significant(i)) continue;
        const long la = static_cast<long>(std::floor((extended(tr, a).psi + shift) / kPi));
        const long lb = static_cast<long>(std::floor((extended(tr, i).psi + shift) / kPi));
        for (long l = la + 1; l <= lb; ++l) out.push_back({a, i, l, +1});
        for (long l = la; l > lb; --l) out.push_back({a, i, l, -1});
        a = i;
    }
    return out;
}

int count_cusps(const PsiTrack& tr, double shift) { return static_cast<int>(crossings(tr, shift).size()); }

cplx nan_cplx() {
    const double q = std::numeric_limits<double>::quiet_NaN();
    return {q, q};
}

double segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double curve_distance(const std::vector<std::vector<cplx>>& curves, cplx p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : curves)
        for (std::size_t k = 0; k < c.size(); ++k) best = std::min(best, segment_distance(p, c[k], c[(k + 1) % c.size()]));
    return best;
}

double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Probe points just off every proper self-intersection of the curves.
std::vector<cplx> crossing_probes(const std::vector<std::vector<cplx>>& curves) {
    struct Seg {
        cplx a, b;
        double lo, hi;
        std::size_t curve, index;
    };
    std::vector<Seg> segs;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& v = curves[c];
        for (std::size_t k = 0; k < v.size(); ++k) {
            const cplx a = v[k], b = v[(k + 1) % v.size()];
            segs.push_back({a, b, std::min(a.real(), b.real()), std::max(a.real(), b.real()), c, k});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.lo < y.lo; });
    std::vector<cplx> probes;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size() && segs[j].lo <= segs[i].hi; ++j) {
            const Seg& s = segs[i];
            const Seg& t = segs[j];
            if (s.curve == t.curve) {
                const std::size_t m = curves[s.curve].size();
                const std::size_t d = s.index > t.index ? s.index - t.index : t.index - s.index;
                if (d <= 1 || d == m - 1) continue;
            }
            const cplx r = s.b - s.a, u = t.b - t.a;
            const double den = cross2(r, u);
            if (den == 0.0) continue;
            const double ts = cross2(t.a - s.a, u) / den;
            const double tu = cross2(t.a - s.a, r) / den;
            if (ts <= 0.0 || ts >= 1.0 || tu <= 0.0 || tu >= 1.0) continue;
            const cplx x = s.a + ts * r;
            const double delta = 1e-3 * std::min(std::abs(r), std::abs(u));
            const cplx e1 = r / std::abs(r), e2 = u / std::abs(u);
            for (double a : {-1.0, 1.0})
                for (double b : {-1.0, 1.0}) {
                    const cplx dir = a * e1 + b * e2;
                    if (std::abs(dir) > 0.0) probes.push_back(x + delta * dir / std::abs(dir));
                }
        }
    }
    return probes;
}

std::vector<int> raw_windings(const std::vector<std::vector<cplx>>& curves, const std::vector<double>& qre,
                              const std::vector<double>& qim) {
    std::vector<int> total(qre.size(), 0), part(qre.size(), 0);
    for (const auto& c : curves) {
        if (c.size() < 2) continue;
        std::vector<double> re(c.size()), im(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            re[k] = c[k].real();
            im[k] = c[k].imag();
        }
        simd::winding_numbers({re, im}, {qre, qim}, part);
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += part[k];
    }
    return total;
}

int polyline_winding(const std::vector<cplx>& poly, cplx q) {
    double total = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const cplx a = poly[k] - q, b = poly[(k + 1) % poly.size()] - q;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace

const char* to_string(CuspKind k) noexcept {
    switch (k) {
        case CuspKind::SmoothSignChange: return "smooth_point_sign_change";
        case CuspKind::BranchCut: return "branch_cut_case";
        case CuspKind::CriticalPoint: return "critical_point";
    }
    return "?";
}

TangentV tangent_V(const HarmonicPoly& h, const RationalFn& f, cplx z) {
    const cplx v = tangent_v(f, z);
    const cplx dp = eval(h.dp(), z), dq = eval(h.dq(), z);
    const cplx sf = std::sqrt(f(z));
    TangentV out;
    out.V = v * dp + std::conj(v * dq);
    out.factored = 2.0 * sf * (kI * v * dq * sf).imag();
    const double scale = std::abs(v) * (std::abs(dp) + std::abs(dq));
    if (std::abs(out.V - out.factored) > 1e-9 * scale)
        throw Error(ErrorKind::AssumptionFailed, "tangent forms disagree; the point is not on the lemniscate");
    return out;
}

std::vector<double> psi(const HarmonicPoly& h, const CurveComponent& C) { return build_track(h, C).at_sample; }

CausticCurve detect_cusps(const HarmonicPoly& h, const CurveComponent& C) {
    const PsiTrack tr = build_track(h, C);
    const RationalFn f = h.f();
    const CPoly dq = h.dq();
    const AngleFn g{&dq};
    const std::function<double(const LemniscateSample&)> angle = g;

    CausticCurve cc;
    cc.zero_count = C.zero_count;
    cc.component_id = C.component_id;
    cc.hole = C.hole;
    cc.psi_samples = tr.at_sample;
    cc.psi_increment = tr.increment;
    for (const LemniscateSample& s : C.samples) {
        cc.theta.push_back(s.theta);
        cc.image_samples.push_back(eval_h(h, s.z));
        if (s.critical) {
            cc.V_samples.push_back(nan_cplx());
        } else {
            const cplx v = velocity(s);
            cc.V_samples.push_back(v * eval(h.dp(), s.z) + std::conj(v * eval(dq, s.z)));
        }
    }

    const std::size_t N = tr.seq.size();
    for (const Crossing& x : crossings(tr, 0.0)) {
        Cusp cusp;
        cusp.direction = x.direction;
        // Does the pair span a jump?
        int jump = -1;
        for (std::size_t i = x.a; i < x.b; ++i) {
            const PsiEntry e = extended(tr, i);
            if (e.jump >= 0) {
                jump = e.jump;
                break;
            }
        }
        if (jump >= 0) {
            cusp.kind = CuspKind::CriticalPoint;
            cusp.theta = tr.crit_theta[static_cast<std::size_t>(jump)];
            cusp.z = tr.crit_z[static_cast<std::size_t>(jump)];
        } else {
            cusp.kind = (x.a < N && x.b >= N) ? CuspKind::BranchCut : CuspKind::SmoothSignChange;
            const PsiEntry ea = extended(tr, x.a), eb = extended(tr, x.b);
            const double target = static_cast<double>(x.level) * kPi;
            const double ga = ea.psi - 0.5 * ea.theta;
            const double ga_raw = g(sample_at(f, C, ea.theta));
            double lo = ea.theta, hi = eb.theta;
            while (hi - lo > kLocateTol) {
                const double mid = 0.5 * (lo + hi);
                const LemniscateSample sm = sample_at(f, C, mid);
                const double psi_m = ga + angle_increment(f, C, angle, ea.theta, ga_raw, mid, g(sm)) + 0.5 * mid;
                if ((psi_m - target) * x.direction < 0.0) lo = mid;
                else hi = mid;
            }
            cusp.theta = 0.5 * (lo + hi);
            cusp.z = point_at(f, C, cusp.theta);
            cusp.theta = reduce(cusp.theta, C.theta_start, tr.span);
        }
        cusp.image = eval_h(h, cusp.z);
        cc.cusps.push_back(cusp);
    }
    std::sort(cc.cusps.begin(), cc.cusps.end(), [](const Cusp& a, const Cusp& b) { return a.theta < b.theta; });
    return cc;
}

std::vector<ArcFit> arc_slopes(const CausticCurve& cc, const CurveComponent& C, int margin) {
    const std::size_t n = cc.theta.size();
    std::vector<ArcFit> fits;
    if (n == 0) return fits;
    const double span = kTwoPi * C.zero_count;
    const double dt = span / static_cast<double>(n);
    std::vector<double> breaks;
    for (const Cusp& c : cc.cusps) breaks.push_back(reduce(c.theta, C.theta_start, span));
    for (const CriticalPoint& cp : C.critical_points) breaks.push_back(reduce(cp.theta, C.theta_start, span));
    std::sort(breaks.begin(), breaks.end());

    auto near_break = [&](double t) {
        for (double b : breaks) {
            const double d = std::abs(std::remainder(t - b, span));
            if (d < margin * dt) return true;
        }
        return false;
    };
    // Start right after the first break so that no arc straddles the walk's ends.
    std::size_t start = 0;
    if (!breaks.empty()) {
        const double first = breaks.front();
        start = static_cast<std::size_t>(std::ceil((first - C.theta_start) / dt + 1e-9)) % n;
    }
    std::size_t next_break = 0;
    const double base = C.theta_start + dt * static_cast<double>(start);
    std::vector<double> ts, as;
    auto flush = [&] {
        if (ts.size() >= 8) {
            const double m = static_cast<double>(ts.size());
            double st = 0, sa = 0;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                st += ts[i];
                sa += as[i];
            }
            const double mt = st / m, ma = sa / m;
            double sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                sxx += (ts[i] - mt) * (ts[i] - mt);
                sxy += (ts[i] - mt) * (as[i] - ma);
            }
            ArcFit fit;
            fit.slope = sxy / sxx;
            double rss = 0;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                const double r = as[i] - (ma + fit.slope * (ts[i] - mt));
                rss += r * r;
            }
            fit.residual = std::sqrt(rss / m);
            fit.theta_begin = ts.front();
            fit.theta_end = ts.back();
            fit.samples = static_cast<int>(ts.size());
            fits.push_back(fit);
        }
        ts.clear();
        as.clear();
    };
    // Breaks re-expressed on the walk's continuous theta axis.
    std::vector<double> walk_breaks;
    for (double b : breaks) walk_breaks.push_back(b < base ? b + span : b);
    std::sort(walk_breaks.begin(), walk_breaks.end());
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t j = (start + step) % n;
        const double t = base + dt * static_cast<double>(step);
        while (next_break < walk_breaks.size() && walk_breaks[next_break] <= t) {
            flush();
            ++next_break;
        }
        const cplx V = cc.V_samples[j];
        if (!std::isfinite(V.real()) || near_break(cc.theta[j])) continue;
        if (std::abs(std::sin(cc.psi_samples[j])) <= 1e-6) continue;
        double a = std::arg(V);
        if (!as.empty()) a = as.back() + wrap_pi(a - as.back());
        ts.push_back(t);
        as.push_back(a);
    }
    flush();
    return fits;
}

int preimage_count(const std::vector<std::vector<cplx>>& boundary_images, cplx w) {
    const std::vector<double> re{w.real()}, im{w.imag()};
    return -raw_windings(boundary_images, re, im)[0];
}

WindingProfile winding_profile(const std::vector<std::vector<cplx>>& curves, int grid) {
    WindingProfile wp;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& c : curves)
        for (const cplx z : c) {
            xmin = std::min(xmin, z.real());
            xmax = std::max(xmax, z.real());
            ymin = std::min(ymin, z.imag());
            ymax = std::max(ymax, z.imag());
        }
    if (!(xmax >= xmin) || grid < 1) return wp;
    const double w = std::max(xmax - xmin, 1e-300), hgt = std::max(ymax - ymin, 1e-300);
    const double side = 1.1 * std::max(w, hgt);
    wp.cell = side / grid;
    wp.nx = std::max(1, static_cast<int>(std::ceil(1.1 * w / wp.cell)));
    wp.ny = std::max(1, static_cast<int>(std::ceil(1.1 * hgt / wp.cell)));
    wp.x0 = 0.5 * (xmin + xmax) - 0.5 * wp.nx * wp.cell;
    wp.y0 = 0.5 * (ymin + ymax) - 0.5 * wp.ny * wp.cell;

    const std::size_t cells = static_cast<std::size_t>(wp.nx) * static_cast<std::size_t>(wp.ny);
    std::vector<double> qre(cells), qim(cells);
    for (int j = 0; j < wp.ny; ++j)
        for (int i = 0; i < wp.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * wp.nx + i;
            qre[k] = wp.x0 + (i + 0.5) * wp.cell;
            qim[k] = wp.y0 + (j + 0.5) * wp.cell;
        }
    const std::vector<int> raw = raw_windings(curves, qre, qim);
    wp.values.resize(cells);
    for (std::size_t k = 0; k < cells; ++k) wp.values[k] = -raw[k];

    auto clampi = [](double v, int hi) { return std::clamp(static_cast<int>(std::floor(v)), 0, hi - 1); };
    for (const auto& c : curves)
        for (std::size_t k = 0; k < c.size(); ++k) {
            const cplx a = c[k], b = c[(k + 1) % c.size()];
            const int i0 = clampi((std::min(a.real(), b.real()) - wp.x0) / wp.cell, wp.nx);
            const int i1 = clampi((std::max(a.real(), b.real()) - wp.x0) / wp.cell, wp.nx);
            const int j0 = clampi((std::min(a.imag(), b.imag()) - wp.y0) / wp.cell, wp.ny);
            const int j1 = clampi((std::max(a.imag(), b.imag()) - wp.y0) / wp.cell, wp.ny);
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i) wp.values[static_cast<std::size_t>(j) * wp.nx + i] = WindingProfile::kOnCurve;
        }

    bool any = false;
    for (std::size_t k = 0; k < cells; ++k) {
        const int v = wp.values[k];
        if (v == WindingProfile::kOnCurve) continue;
        wp.max_value = any ? std::max(wp.max_value, v) : v;
        wp.min_value = any ? std::min(wp.min_value, v) : v;
        any = true;
        if (v >= 2) {
            const cplx c(qre[k], qim[k]);
            const double d = curve_distance(curves, c);
            if (!wp.deep_point || d > wp.deep_clearance) {
                wp.deep_point = c;
                wp.deep_clearance = d;
            }
        }
    }
    if (!wp.deep_point) {
        for (const cplx pr : crossing_probes(curves)) {
            const int v = preimage_count(curves, pr);
            if (v < 2) continue;
            const double d = curve_distance(curves, pr);
            wp.max_value = std::max(wp.max_value, v);
            if (!wp.deep_point || d > wp.deep_clearance) {
                wp.deep_point = pr;
                wp.deep_clearance = d;
            }
        }
    }
    return wp;
}

WindingProfile winding_profile(const std::vector<CausticCurve>& caustics, int grid) {
    std::vector<std::vector<cplx>> curves;
    for (const CausticCurve& c : caustics) curves.push_back(c.image_samples);
    return winding_profile(curves, grid);
}

std::vector<cplx> zeros_in_component(const OmegaDecomposition& om, int component_id, const RootSet& rs) {
    std::vector<std::vector<cplx>> polys;
    for (const CurveComponent& c : om.components)
        if (c.component_id == component_id) polys.push_back(c.polyline());
    std::vector<cplx> out;
    for (const Root& r : rs.roots) {
        int w = 0;
        for (const auto& poly : polys) w += polyline_winding(poly, r.location);
        if (w != 0) out.push_back(r.location);
    }
    return out;
}

TwoZeroScan two_zero_scan(const HarmonicPoly& h, const OmegaDecomposition& om, std::size_t contour,
                          const TwoZeroOptions& opts) {
    if (contour >= om.components.size()) throw Error(ErrorKind::InvalidArgument, "contour index out of range");
    if (opts.phi_steps < 1) throw Error(ErrorKind::InvalidArgument, "phi_steps must be positive");
    const CurveComponent& C = om.components[contour];
    if (C.zero_count != 1 || C.hole)
        throw Error(ErrorKind::AssumptionFailed, "two-zero search needs an outer contour with one zero of f");
    const RationalFn f = h.f();
    const CurveComponent Ch = harmonic_parametrization(f, C, opts.samples_per_turn);

    TwoZeroScan scan;
    scan.min_ratio = min_curvature_ratio(curvature_ratio(h, Ch));
    if (opts.require_condition && !(scan.min_ratio < -0.5))
        throw Error(ErrorKind::AssumptionFailed, "curvature condition fails: min ratio >= -1/2");

    const PsiTrack tr = build_track(h, Ch);
    std::vector<cplx> pv, qv;
    for (const LemniscateSample& s : Ch.samples) {
        pv.push_back(eval(h.p(), s.z));
        qv.push_back(std::conj(eval(h.q(), s.z)));
    }
    // Other contours of the same component (holes) belong to the boundary too.
    std::vector<std::vector<cplx>> other_p, other_q;
    for (std::size_t c = 0; c < om.components.size(); ++c) {
        if (c == contour || om.components[c].component_id != C.component_id) continue;
        std::vector<cplx> a, b;
        for (const LemniscateSample& s : om.components[c].samples) {
            a.push_back(eval(h.p(), s.z));
            b.push_back(std::conj(eval(h.q(), s.z)));
        }
        other_p.push_back(std::move(a));
        other_q.push_back(std::move(b));
    }

    for (int step = 0; step < opts.phi_steps; ++step) {
        const double phi = 2.0 * kTwoPi * step / opts.phi_steps;
        const cplx rot = std::polar(1.0, phi);
        scan.cusp_counts.push_back(count_cusps(tr, 0.5 * phi));
        ++scan.steps_scanned;
        std::vector<std::vector<cplx>> curves(1 + other_p.size());
        for (std::size_t k = 0; k < pv.size(); ++k) curves[0].push_back(rot * pv[k] + qv[k]);
        for (std::size_t c = 0; c < other_p.size(); ++c)
            for (std::size_t k = 0; k < other_p[c].size(); ++k) curves[c + 1].push_back(rot * other_p[c][k] + other_q[c][k]);
        const WindingProfile wp = winding_profile(curves, opts.grid);
        if (!wp.deep_point) continue;
        const cplx A = -*wp.deep_point;
        const HarmonicPoly ht(rot * h.p() + CPoly::constant(A), h.q());
        const RootSet rs = find_all_zeros(ht);
        RootSet inside;
        for (const Root& r : rs.roots)
            if (r.certified) inside.roots.push_back(r);
        const std::vector<cplx> zs = zeros_in_component(om, C.component_id, inside);
        if (zs.size() >= 2) {
            scan.certificate = TwoZeroCertificate{phi, A, zs, C.component_id};
            return scan;
        }
    }
    return scan;
}

TwoZeroCertificate two_zero_search(const HarmonicPoly& h, const OmegaDecomposition& om, std::size_t contour,
                                   const TwoZeroOptions& opts) {
    TwoZeroScan scan = two_zero_scan(h, om, contour, opts);
    if (scan.certificate) return *scan.certificate;
    std::map<int, int> hist;
    for (int c : scan.cusp_counts) ++hist[c];
    std::ostringstream msg;
    msg << "no two-zero certificate over " << scan.steps_scanned << " phi steps; cusp counts:";
    for (const auto& [c, times] : hist) msg << ' ' << c << 'x' << times;
    throw Error(ErrorKind::NotFound, msg.str());
}

InflectionReport inflection_check(const RationalFn& f, cplx z0) {
    const auto t = f.taylor(z0, 3);
    const cplx f0 = t[0];
    if (!(std::abs(std::abs(f0) - 1.0) <= 1e-8))
        throw Error(ErrorKind::AssumptionFailed, "|f(z0)| != 1: z0 is not on the lemniscate");
    const double scale = std::max({1.0, std::abs(t[2]), std::abs(t[3])});
    if (std::abs(t[1]) > 1e-7 * scale) throw Error(ErrorKind::AssumptionFailed, "f'(z0) != 0: z0 is not critical");
    const cplx r1 = t[1] / f0, r2 = 2.0 * t[2] / f0, r3 = 6.0 * t[3] / f0;
    InflectionReport rep;
    rep.L2 = r2 - r1 * r1;
    rep.L3 = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
    if (std::abs(rep.L2) <= 1e-9 * (1.0 + std::pow(std::abs(rep.L3), 2.0 / 3.0)))
        throw Error(ErrorKind::AssumptionFailed, "(log f)''(z0) = 0");
    const cplx s = std::sqrt(rep.L2);
    const cplx ratio = rep.L3 / (rep.L2 * s);
    const double tol = 1e-9 * std::max(1.0, std::abs(ratio));
    rep.no_inflection = true;
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const cplx e = std::polar(1.0, sign * 0.25 * kPi);
        rep.values[static_cast<std::size_t>(k)] = (e * ratio).real();
        if (std::abs(rep.values[static_cast<std::size_t>(k)]) <= tol) rep.no_inflection = false;
        ArcModel& arc = rep.arcs[static_cast<std::size_t>(k)];
        arc.direction = e * kI * std::abs(s) / s;
        arc.curvature = -(arc.direction * rep.L3 / rep.L2).imag() / 3.0;
        arc.quadratic = 0.5 * kI * arc.direction * arc.curvature;
    }
    // The two tangent directions differ by a quarter turn.
    rep.perpendicular = std::abs((rep.arcs[1].direction * std::conj(rep.arcs[0].direction)).real()) < 1e-12;
    return rep;
}

}  // namespace harmlab
