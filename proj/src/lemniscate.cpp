#include "harmlab/lemniscate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "harmlab/error.hpp"

namespace harmlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Bisection depth cap for angle unwrapping between samples.
constexpr int kMaxRefine = 30;

double wrap_pi(double a) noexcept { return std::remainder(a, kTwoPi); }

double mod_two_pi(double a) noexcept {
    double r = std::fmod(a, kTwoPi);
    return r < 0.0 ? r + kTwoPi : r;
}

// Synthetic division by (z - r); the remainder is dropped.
CPoly deflate(const CPoly& p, cplx r) {
    const auto& a = p.coeffs();
    if (a.size() < 2) return p;
    std::vector<cplx> q(a.size() - 1);
    cplx carry = a.back();
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = a[k] + carry * r;
    }
    return CPoly(std::move(q));
}

// Level polynomial N - e^{i theta} D and the Newton corrector on it.
struct Level {
    CPoly N, D, dN, dD;

    cplx value(double theta, cplx z) const { return eval(N, z) - std::polar(1.0, theta) * eval(D, z); }
    cplx deriv(double theta, cplx z) const { return eval(dN, z) - std::polar(1.0, theta) * eval(dD, z); }

    CPoly poly(double theta) const { return N - std::polar(1.0, theta) * D; }

    // Newton to full precision; false if it stalls or leaves a
    // neighbourhood of radius `reach`.
    bool correct(double theta, cplx& z, double reach) const {
        const cplx start = z;
        const cplx e = std::polar(1.0, theta);
        double last = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 60; ++it) {
            cplx n, dn, d, dd;
            eval_with_derivative(N, z, n, dn);
            eval_with_derivative(D, z, d, dd);
            const cplx v = n - e * d, dv = dn - e * dd;
            if (dv == cplx{}) return false;
            const cplx step = v / dv;
            z -= step;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
            if (std::abs(z - start) > reach) return false;
            const double s = std::abs(step);
            if (s <= 4e-16 * (1.0 + std::abs(z))) return true;
            if (it > 8 && s >= last) return s <= 1e-11 * (1.0 + std::abs(z));
            last = s;
        }
        return last <= 1e-11 * (1.0 + std::abs(z));
    }
};

LemniscateSample make_sample(const RationalFn& f, cplx z, double theta) {
    LemniscateSample s;
    s.z = z;
    s.theta = theta;
    f.eval_with_derivative(z, s.f_val, s.fprime_val);
    return s;
}

cplx velocity(const LemniscateSample& s) { return cplx(0.0, 1.0) * s.f_val / s.fprime_val; }

struct Saddle {
    CriticalPoint cp;
    cplx ck;     // f^{(k)}(z0) / k!
    double base; // (1/k) arg(f(z0) / f^{(k)}(z0))
};

int ray_index(const Saddle& s, cplx w) {
    const int k = s.cp.order;
    const double u = (std::arg(w) - s.base) / (kPi / k) - 0.5;
    const long j = std::lround(u);
    return static_cast<int>(((j % (2 * k)) + 2 * k) % (2 * k));
}

std::vector<Saddle> find_saddles(const RationalFn& f, const TraceOptions& opts) {
    std::vector<Saddle> out;
    const CPoly dn = f.derivative_numerator();
    if (dn.degree() < 1) return out;
    const auto roots = all_roots(dn);
    for (const RootCluster& c : cluster_roots(roots, 1e-6)) {
        const cplx fz = f(c.center);
        if (!std::isfinite(std::abs(fz)) || std::abs(std::abs(fz) - 1.0) > opts.on_curve_tol) continue;
        Saddle s;
        s.cp.z = c.center;
        s.cp.order = c.multiplicity + 1;
        s.cp.theta = mod_two_pi(std::arg(fz));
        const auto t = f.taylor(c.center, s.cp.order);
        s.ck = t[static_cast<std::size_t>(s.cp.order)];
        s.base = std::arg(fz / s.ck) / s.cp.order;
        out.push_back(s);
    }
    return out;
}

double min_separation(const std::vector<cplx>& z, std::size_t i) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) sep = std::min(sep, std::abs(z[i] - z[j]));
    return sep;
}

// Greedy nearest assignment; empty result when it is not a bijection.
std::vector<std::size_t> match(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    std::vector<std::size_t> out(from.size());
    std::vector<char> used(to.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = to.size();
        for (std::size_t j = 0; j < to.size(); ++j) {
            const double d = std::abs(from[i] - to[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        if (arg == to.size() || used[arg]) return {};
        used[arg] = 1;
        out[i] = arg;
    }
    return out;
}

double polygon_area(const std::vector<cplx>& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const cplx a = v[k], b = v[(k + 1) % v.size()];
        s += a.real() * b.imag() - a.imag() * b.real();
    }
    return 0.5 * s;
}

int polyline_winding(const std::vector<cplx>& poly, cplx q) {
    double total = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const cplx a = poly[k] - q, b = poly[(k + 1) % poly.size()] - q;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

class Tracer {
public:
    Tracer(const RationalFn& f, const Level& lv, const TraceOptions& opts, std::vector<Saddle> saddles)
        : f_(f), lv_(lv), opts_(opts), saddles_(std::move(saddles)) {}

    OmegaDecomposition run() {
        choose_start();
        const CPoly p0 = lv_.poly(theta_start_);
        const std::size_t d = static_cast<std::size_t>(p0.degree());
        OmegaDecomposition out;
        for (const Saddle& s : saddles_) out.critical_points.push_back(s.cp);
        if (d == 0) return out;

        z_ = all_roots(p0);
        for (cplx& z : z_) lv_.correct(theta_start_, z, 1e-6 * (1.0 + std::abs(z)));
        start_ = z_;
        tracks_.assign(d, {});
        for (std::size_t i = 0; i < d; ++i) tracks_[i].push_back(make_sample(f_, z_[i], theta_start_));

        // Saddle angles relative to the start, in (0, 2 pi).
        std::vector<double> stops;
        for (const Saddle& s : saddles_) {
            const double rel = mod_two_pi(s.cp.theta - theta_start_);
            bool dup = false;
            for (double t : stops) dup = dup || std::abs(t - rel) < 1e-9;
            if (!dup) stops.push_back(rel);
        }
        std::sort(stops.begin(), stops.end());

        double theta = theta_start_;
        for (double rel : stops) {
            const double t0 = theta_start_ + rel;
            advance_to(theta, t0 - opts_.saddle_gap);
            theta = bridge(t0);
        }
        advance_to(theta, theta_start_ + kTwoPi);

        // Monodromy: where each root ends among the starting roots.
        const std::vector<std::size_t> perm = match(z_, start_);
        if (perm.empty()) throw Error(ErrorKind::TraceStall, "lemniscate trace did not close");
        for (std::size_t i = 0; i < d; ++i)
            if (std::abs(z_[i] - start_[perm[i]]) > 1e-6 * (1.0 + std::abs(z_[i])))
                throw Error(ErrorKind::TraceStall, "lemniscate trace did not close");

        std::vector<char> seen(d, 0);
        for (std::size_t i0 = 0; i0 < d; ++i0) {
            if (seen[i0]) continue;
            CurveComponent c;
            c.theta_start = theta_start_;
            std::size_t i = i0;
            int turns = 0;
            do {
                seen[i] = 1;
                const auto& tr = tracks_[i];
                for (std::size_t s = 0; s + 1 < tr.size(); ++s) {
                    LemniscateSample smp = tr[s];
                    smp.theta += kTwoPi * turns;
                    c.samples.push_back(smp);
                }
                ++turns;
                i = perm[i];
            } while (i != i0);
            c.zero_count = turns;
            for (const LemniscateSample& s : c.samples)
                if (s.critical) {
                    CriticalPoint cp{s.z, s.theta, 2};
                    for (const Saddle& sd : saddles_)
                        if (std::abs(sd.cp.z - s.z) < 1e-9 * (1.0 + std::abs(s.z))) cp.order = sd.cp.order;
                    c.critical_points.push_back(cp);
                }
            out.components.push_back(std::move(c));
        }
        assign_regions(out);
        for (const CurveComponent& c : out.components) out.total_zero_count += c.zero_count;
        return out;
    }

private:
    void choose_start() {
        theta_start_ = 0.0;
        double nearest = kPi;
        for (const Saddle& s : saddles_) nearest = std::min(nearest, std::abs(wrap_pi(s.cp.theta)));
        if (nearest > 1e-3) return;
        // Middle of the widest gap between saddle angles.
        std::vector<double> t;
        for (const Saddle& s : saddles_) t.push_back(s.cp.theta);
        std::sort(t.begin(), t.end());
        double best = -1.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            const double a = t[k], b = k + 1 < t.size() ? t[k + 1] : t[0] + kTwoPi;
            if (b - a > best) {
                best = b - a;
                theta_start_ = mod_two_pi(0.5 * (a + b));
            }
        }
    }

    void advance_to(double& theta, double target) {
        double h = opts_.max_step;
        const std::size_t d = z_.size();
        std::vector<cplx> next(d);
        std::vector<LemniscateSample> smp(d);
        while (theta < target) {
            const double step = std::min(h, target - theta);
            const double t1 = theta + step;
            bool ok = true;
            for (std::size_t i = 0; i < d && ok; ++i) {
                const LemniscateSample& cur = tracks_[i].back();
                const double sep = min_separation(z_, i);
                const cplx v = velocity(cur);
                next[i] = z_[i] + v * step;
                const cplx pred = next[i];
                ok = lv_.correct(t1, next[i], 0.3 * sep);
                if (!ok) break;
                if (std::abs(next[i] - pred) > 0.1 * sep || std::abs(next[i] - z_[i]) > 0.3 * sep) ok = false;
                if (!ok) break;
                smp[i] = make_sample(f_, next[i], t1);
                const cplx v1 = velocity(smp[i]);
                if (!(std::abs(std::arg(v1 / v)) <= opts_.max_turn)) ok = false;
            }
            if (!ok) {
                h = 0.5 * step;
                if (h < 1e-15 * (1.0 + std::abs(theta))) throw Error(ErrorKind::TraceStall, "lemniscate step collapsed");
                continue;
            }
            for (std::size_t i = 0; i < d; ++i) {
                z_[i] = next[i];
                tracks_[i].push_back(smp[i]);
            }
            theta = t1;
            h = std::min(opts_.max_step, 1.5 * step);
        }
    }

    // Crosses the saddle angle t0: roots near a critical point of order k
    // arrive on the odd rays and leave on the even ones; the branch arriving
    // on ray 2l+1 leaves on ray 2l (the boundary of the wedge between them).
    double bridge(double t0) {
        const double gap = opts_.saddle_gap;
        const double t1 = t0 + gap;
        std::vector<cplx> after = all_roots(lv_.poly(t1));
        for (cplx& z : after) lv_.correct(t1, z, 1e-3 * (1.0 + std::abs(z)));

        const std::size_t d = z_.size();
        std::vector<long> target(d, -1);
        std::vector<char> taken(after.size(), 0);
        std::vector<long> via(d, -1);  // saddle index the slot passes through

        for (std::size_t si = 0; si < saddles_.size(); ++si) {
            const Saddle& s = saddles_[si];
            if (std::abs(wrap_pi(s.cp.theta - t0)) > 1e-9) continue;
            const int k = s.cp.order;
            const double reach = 4.0 * std::pow(gap / std::abs(s.ck), 1.0 / k);
            std::vector<std::size_t> in, out;
            for (std::size_t i = 0; i < d; ++i)
                if (std::abs(z_[i] - s.cp.z) < reach) in.push_back(i);
            for (std::size_t j = 0; j < after.size(); ++j)
                if (std::abs(after[j] - s.cp.z) < reach) out.push_back(j);
            if (in.size() != static_cast<std::size_t>(k) || out.size() != static_cast<std::size_t>(k))
                throw Error(ErrorKind::SaddleUnresolved, "branch count near a critical point does not match its order");
            std::vector<long> by_ray(static_cast<std::size_t>(2 * k), -1);
            for (std::size_t j : out) {
                const int r = ray_index(s, after[j] - s.cp.z);
                if (r % 2 != 0 || by_ray[static_cast<std::size_t>(r)] >= 0)
                    throw Error(ErrorKind::SaddleUnresolved, "ambiguous outgoing branch at a critical point");
                by_ray[static_cast<std::size_t>(r)] = static_cast<long>(j);
            }
            for (std::size_t i : in) {
                const int r = ray_index(s, z_[i] - s.cp.z);
                if (r % 2 != 1 || target[i] >= 0)
                    throw Error(ErrorKind::SaddleUnresolved, "ambiguous incoming branch at a critical point");
                const long j = by_ray[static_cast<std::size_t>(r - 1)];
                if (j < 0 || taken[static_cast<std::size_t>(j)])
                    throw Error(ErrorKind::SaddleUnresolved, "unpaired branch at a critical point");
                target[i] = j;
                taken[static_cast<std::size_t>(j)] = 1;
                via[i] = static_cast<long>(si);
            }
        }
        // Remaining roots move by O(gap); nearest neighbour after a predictor step.
        for (std::size_t i = 0; i < d; ++i) {
            if (target[i] >= 0) continue;
            const cplx pred = z_[i] + velocity(tracks_[i].back()) * (t1 - tracks_[i].back().theta);
            double best = std::numeric_limits<double>::infinity();
            long arg = -1;
            for (std::size_t j = 0; j < after.size(); ++j) {
                if (taken[j]) continue;
                const double dist = std::abs(after[j] - pred);
                if (dist < best) {
                    best = dist;
                    arg = static_cast<long>(j);
                }
            }
            if (arg < 0 || best > 0.1 * min_separation(z_, i))
                throw Error(ErrorKind::SaddleUnresolved, "root matching across a saddle angle failed");
            target[i] = arg;
            taken[static_cast<std::size_t>(arg)] = 1;
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (via[i] >= 0) {
                const Saddle& s = saddles_[static_cast<std::size_t>(via[i])];
                LemniscateSample c;
                c.z = s.cp.z;
                c.theta = t0;
                c.f_val = f_(s.cp.z);
                c.fprime_val = cplx{};
                c.critical = true;
                tracks_[i].push_back(c);
            }
            z_[i] = after[static_cast<std::size_t>(target[i])];
            tracks_[i].push_back(make_sample(f_, z_[i], t1));
        }
        return t1;
    }

    static void assign_regions(OmegaDecomposition& out) {
        std::vector<std::vector<cplx>> polys;
        std::vector<double> areas;
        for (CurveComponent& c : out.components) {
            polys.push_back(c.polyline());
            areas.push_back(polygon_area(polys.back()));
            c.hole = areas.back() < 0.0;
        }
        int next_id = 0;
        for (CurveComponent& c : out.components)
            if (!c.hole) c.component_id = next_id++;
        for (std::size_t h = 0; h < out.components.size(); ++h) {
            CurveComponent& c = out.components[h];
            if (!c.hole) continue;
            // A non-critical sample of the hole decides containment.
            cplx probe = c.samples.front().z;
            for (const LemniscateSample& s : c.samples)
                if (!s.critical) {
                    probe = s.z;
                    break;
                }
            double best = std::numeric_limits<double>::infinity();
            int id = next_id;
            for (std::size_t o = 0; o < out.components.size(); ++o) {
                if (out.components[o].hole) continue;
                if (polyline_winding(polys[o], probe) != 0 && areas[o] < best) {
                    best = areas[o];
                    id = out.components[o].component_id;
                }
            }
            if (id == next_id) ++next_id;
            c.component_id = id;
        }
    }

    const RationalFn& f_;
    const Level& lv_;
    TraceOptions opts_;
    std::vector<Saddle> saddles_;
    double theta_start_ = 0.0;
    std::vector<cplx> z_, start_;
    std::vector<std::vector<LemniscateSample>> tracks_;
};

Level make_level(const CPoly& N, const CPoly& D) { return Level{N, D, derivative(N), derivative(D)}; }

// Bracketing samples for theta within the contour, as indices (a, b) with
// b possibly wrapping to 0.
std::pair<std::size_t, std::size_t> bracket(const std::vector<LemniscateSample>& s, double theta) {
    const auto it = std::upper_bound(s.begin(), s.end(), theta,
                                     [](double t, const LemniscateSample& x) { return t < x.theta; });
    const std::size_t b = static_cast<std::size_t>(it - s.begin());
    const std::size_t a = b == 0 ? s.size() - 1 : b - 1;
    return {a, b == s.size() ? 0 : b};
}

double reduce_theta(const CurveComponent& C, double theta) {
    const double span = kTwoPi * C.zero_count;
    double t = std::fmod(theta - C.theta_start, span);
    if (t < 0.0) t += span;
    return C.theta_start + t;
}

}  // namespace

double CurveComponent::theta_end() const noexcept { return theta_start + kTwoPi * zero_count; }

double CurveComponent::signed_area() const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const cplx a = samples[k].z, b = samples[(k + 1) % samples.size()].z;
        s += a.real() * b.imag() - a.imag() * b.real();
    }
    return 0.5 * s;
}

std::vector<cplx> CurveComponent::polyline() const {
    std::vector<cplx> v;
    v.reserve(samples.size());
    for (const LemniscateSample& s : samples) v.push_back(s.z);
    return v;
}

int OmegaDecomposition::region_count() const {
    int top = -1;
    for (const CurveComponent& c : components) top = std::max(top, c.component_id);
    return top + 1;
}

bool OmegaDecomposition::simply_connected(int component_id) const {
    for (const CurveComponent& c : components)
        if (c.component_id == component_id && c.hole) return false;
    return true;
}

OmegaDecomposition trace_lemniscate(const RationalFn& f, const TraceOptions& opts) {
    CPoly N = f.numerator(), D = f.denominator();
    if (N.degree() <= D.degree())
        throw Error(ErrorKind::InvalidArgument, "trace_lemniscate needs deg numerator > deg denominator");
    std::vector<cplx> shared;
    for (const cplx r : f.common_roots()) {
        N = deflate(N, r);
        D = deflate(D, r);
        shared.push_back(r);
    }
    const RationalFn g(N, D);
    const Level lv = make_level(N, D);
    Tracer tracer(g, lv, opts, find_saddles(g, opts));
    OmegaDecomposition out = tracer.run();
    for (const cplx r : shared)
        if (std::abs(std::abs(g(r)) - 1.0) <= opts.on_curve_tol) out.denominator_zeros_on_curve.push_back(r);
    return out;
}

int zeros_inside(const RationalFn& f, const CurveComponent& C) {
    return winding_number([&f](cplx z) { return f(z); }, polyline_curve(C.polyline()),
                          static_cast<int>(std::max<std::size_t>(64, C.samples.size())));
}

cplx point_at(const RationalFn& f, const CurveComponent& C, double theta) {
    const std::vector<LemniscateSample>& ref = C.trace.empty() ? C.samples : C.trace;
    if (ref.empty()) throw Error(ErrorKind::InvalidArgument, "point_at on an empty contour");
    const Level lv = make_level(f.numerator(), f.denominator());
    const double t = reduce_theta(C, theta);
    const auto [a, b] = bracket(ref, t);
    const LemniscateSample& sa = ref[a];
    const LemniscateSample& sb = ref[b];
    double ta = sa.theta, tb = sb.theta;
    if (b == 0) tb += kTwoPi * C.zero_count;
    if (a == ref.size() - 1 && t < ta) ta -= kTwoPi * C.zero_count;
    if (t == ta) return sa.z;
    const double span = std::abs(sb.z - sa.z) + 1e-12 * (1.0 + std::abs(sa.z));
    // Predict from the nearer smooth end; a critical sample has no velocity.
    const bool from_a = !sa.critical && (sb.critical || t - ta <= tb - t);
    const LemniscateSample& s0 = from_a ? sa : sb;
    const double dt = t - (from_a ? ta : tb);
    // Substeps keep each corrector inside its basin.
    const int pieces = 4;
    cplx z = s0.z;
    LemniscateSample cur = s0;
    for (int k = 1; k <= pieces; ++k) {
        const double tk = (from_a ? ta : tb) + dt * k / pieces;
        z = cur.critical ? z : z + velocity(cur) * (dt / pieces);
        if (!lv.correct(tk, z, 2.0 * span)) {
            // Linear interpolation as a fallback predictor.
            const double w = (tk - ta) / (tb - ta);
            z = sa.z + w * (sb.z - sa.z);
            if (!lv.correct(tk, z, 2.0 * span)) throw Error(ErrorKind::TraceStall, "point_at corrector failed");
        }
        cur = make_sample(f, z, tk);
    }
    return z;
}

LemniscateSample sample_at(const RationalFn& f, const CurveComponent& C, double theta) {
    return make_sample(f, point_at(f, C, theta), theta);
}

double angle_increment(const RationalFn& f, const CurveComponent& C,
                       const std::function<double(const LemniscateSample&)>& angle, double ta, double pa, double tb,
                       double pb) {
    const auto split = [&](auto&& self, double a, double fa, double b, double fb, int depth) -> double {
        const double d = wrap_pi(fb - fa);
        if (std::abs(d) <= 0.5 * kPi) return d;
        if (depth >= kMaxRefine) throw Error(ErrorKind::BranchJump, "angle step above pi/2 after refinement");
        const double m = 0.5 * (a + b);
        const double fm = angle(sample_at(f, C, m));
        return self(self, a, fa, m, fm, depth + 1) + self(self, m, fm, b, fb, depth + 1);
    };
    return split(split, ta, pa, tb, pb, 0);
}

CurveComponent harmonic_parametrization(const RationalFn& f, const CurveComponent& C, int samples_per_turn) {
    if (C.zero_count < 1) throw Error(ErrorKind::InvalidArgument, "harmonic parametrization needs zero_count >= 1");
    if (samples_per_turn < 8) throw Error(ErrorKind::InvalidArgument, "samples_per_turn must be at least 8");
    CurveComponent out;
    out.zero_count = C.zero_count;
    out.critical_points = C.critical_points;
    out.component_id = C.component_id;
    out.hole = C.hole;
    out.theta_start = C.theta_start;
    out.harmonic = true;
    out.trace = C.trace.empty() ? C.samples : C.trace;
    const long total = static_cast<long>(samples_per_turn) * C.zero_count;
    const double dt = kTwoPi / samples_per_turn;
    out.samples.reserve(static_cast<std::size_t>(total));
    for (long j = 0; j < total; ++j) {
        const double t = C.theta_start + dt * static_cast<double>(j);
        bool at_critical = false;
        for (const CriticalPoint& cp : C.critical_points)
            if (std::abs(cp.theta - t) < 1e-12) {
                LemniscateSample s;
                s.z = cp.z;
                s.theta = t;
                s.f_val = f(cp.z);
                s.critical = true;
                out.samples.push_back(s);
                at_critical = true;
            }
        if (!at_critical) out.samples.push_back(make_sample(f, point_at(f, C, t), t));
    }
    return out;
}

cplx tangent_v(const RationalFn& f, cplx z) {
    cplx fz, dfz;
    f.eval_with_derivative(z, fz, dfz);
    if (!(std::abs(std::abs(fz) - 1.0) <= 1e-6)) throw Error(ErrorKind::NotOnLemniscate, "tangent_v off the lemniscate");
    if (std::abs(dfz) * (1.0 + std::abs(z)) < 1e-12 * std::abs(fz))
        throw Error(ErrorKind::CriticalPoint, "tangent_v at a critical point of f");
    return cplx(0.0, 1.0) * fz / dfz;
}

double curvature_ratio_at(const HarmonicPoly& h, cplx z) {
    const RationalFn f = h.f();
    const auto t = f.taylor(z, 2);
    const cplx fz = t[0], d1 = t[1], d2 = 2.0 * t[2];
    if (d1 == cplx{}) throw Error(ErrorKind::CriticalPoint, "curvature ratio at a critical point");
    const cplx v = cplx(0.0, 1.0) * fz / d1;
    const CPoly dq = h.dq(), ddq = derivative(dq);
    return (1.0 - fz * d2 / (d1 * d1)).real() + (v * eval(ddq, z) / eval(dq, z)).imag();
}

std::vector<double> curvature_ratio(const HarmonicPoly& h, const CurveComponent& C) {
    if (!C.harmonic) throw Error(ErrorKind::InvalidArgument, "curvature_ratio needs a harmonic parametrization");
    const RationalFn f = h.f();
    const CPoly dq = h.dq();
    const std::size_t n = C.samples.size();
    const double dt = kTwoPi / (static_cast<double>(n) / C.zero_count);
    const double span = kTwoPi * C.zero_count;

    auto angle_at = [&](const LemniscateSample& s) { return std::arg(velocity(s) * eval(dq, s.z)); };
    auto straddles = [&](double a, double b) {
        for (const CriticalPoint& cp : C.critical_points) {
            for (double shift : {-span, 0.0, span}) {
                const double t = cp.theta + shift;
                if (t >= a - 1e-12 && t <= b + 1e-12) return true;
            }
        }
        return false;
    };

    std::vector<double> phi(n, 0.0);
    std::vector<char> bad(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        bad[j] = C.samples[j].critical;
        if (!bad[j]) phi[j] = angle_at(C.samples[j]);
    }
    const std::function<double(const LemniscateSample&)> angle = angle_at;
    auto step = [&](std::size_t j) {
        const std::size_t k = (j + 1) % n;
        const double ta = C.samples[j].theta;
        return angle_increment(f, C, angle, ta, phi[j], ta + dt, phi[k]);
    };

    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t prev = (j + n - 1) % n, next = (j + 1) % n;
        if (bad[j] || bad[prev] || bad[next]) continue;
        const double a = C.samples[j].theta - dt, b = C.samples[j].theta + dt;
        if (straddles(a, b)) continue;
        out[j] = (step(prev) + step(j)) / (2.0 * dt);
    }
    return out;
}

WedgeStructure wedge_structure(const RationalFn& f, cplx z0) {
    const cplx f0 = f(z0);
    if (!(std::abs(std::abs(f0) - 1.0) <= 1e-6)) throw Error(ErrorKind::NotOnLemniscate, "wedge_structure off the lemniscate");
    const int order = std::max(8, f.numerator().degree() + 1);
    const auto t = f.taylor(z0, order);
    double top = std::abs(f0);
    for (std::size_t j = 1; j < t.size(); ++j) top = std::max(top, std::abs(t[j]));
    int k = 0;
    for (std::size_t j = 1; j < t.size(); ++j)
        if (std::abs(t[j]) > 1e-6 * top) {
            k = static_cast<int>(j);
            break;
        }
    if (k == 1) throw Error(ErrorKind::NotCritical, "f'(z0) != 0");
    if (k == 0) throw Error(ErrorKind::NotCritical, "f is locally constant at z0");
    WedgeStructure w;
    w.k = k;
    const double base = std::arg(f0 / t[static_cast<std::size_t>(k)]) / k;
    for (int j = 0; j < 2 * k; ++j) w.angles.push_back(base + kPi / k * (j + 0.5));
    return w;
}

double min_curvature_ratio(const std::vector<double>& ratios) {
    double m = std::numeric_limits<double>::infinity();
    for (double r : ratios)
        if (std::isfinite(r)) m = std::min(m, r);
    return m;
}

}  // namespace harmlab
