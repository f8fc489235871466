#include "harmlab/hroots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "harmlab/error.hpp"
#include "harmlab/simd.hpp"

namespace harmlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAxisEps = 1e-8;
constexpr double kAcceptResidual = 1e-9;  // relative, for Newton candidates
// Root classification is scale-relative; orientation_at(h, z) keeps the
// absolute +1 floor of its documented tolerance.
constexpr double kRootJacobianTol = 1e-9;

}  // namespace

HarmonicPoly::HarmonicPoly(CPoly p, CPoly q)
    : p_(std::move(p)), q_(std::move(q)), dp_(derivative(p_)), dq_(derivative(q_)) {
    if (p_.degree() < 1) throw Error(ErrorKind::InvalidArgument, "analytic part must have degree >= 1");
    if (q_.degree() >= p_.degree()) throw Error(ErrorKind::InvalidArgument, "need deg p > deg q");
}

RationalFn HarmonicPoly::f() const {
    if (dq_.is_zero()) throw Error(ErrorKind::InvalidArgument, "f = p'/q' needs a nonconstant q");
    return RationalFn(dp_, dq_);
}

cplx eval_h(const HarmonicPoly& h, cplx z) noexcept { return eval(h.p(), z) + std::conj(eval(h.q(), z)); }

double eval_h_scale(const HarmonicPoly& h, cplx z) noexcept {
    return eval_scale(h.p(), z) + eval_scale(h.q(), z);
}

DenseModel::DenseModel(const HarmonicPoly& h)
    : h_(h),
      A_(h.p() + h.q()),
      B_(h.p() - h.q()),
      dA_(derivative(A_)),
      dB_(derivative(B_)),
      a_(A_.coeffs()),
      da_(dA_.coeffs()),
      b_(B_.coeffs()),
      db_(dB_.coeffs()) {}

HarmonicJet DenseModel::jet(cplx z) const {
    HarmonicJet j;
    const cplx a = eval(A_, z), b = eval(B_, z);
    j.h = cplx(a.real(), b.imag());
    j.dA = eval(dA_, z);
    j.dB = eval(dB_, z);
    j.dp = 0.5 * (j.dA + j.dB);
    j.dq = 0.5 * (j.dA - j.dB);
    const double sa = eval_scale(A_, z), sb = eval_scale(B_, z);
    j.scale = sa + sb;
    const double rel = 8.0 * (h_.n() + 1) * kEps;
    j.err_re = rel * sa;
    j.err_im = rel * sb;
    j.jacobian = j.dA.real() * j.dB.real() + j.dA.imag() * j.dB.imag();
    j.jac_tol = kRootJacobianTol * std::abs(j.dA) * std::abs(j.dB);
    return j;
}

TaylorPair DenseModel::taylor(cplx c) const {
    TaylorPair t{taylor_coefficients(A_, c), taylor_coefficients(B_, c), taylor_magnitudes(A_, std::abs(c)),
                 taylor_magnitudes(B_, std::abs(c))};
    const double rel = 16.0 * (h_.n() + 1) * kEps;
    for (double& e : t.ea) e *= rel;
    for (double& e : t.eb) e *= rel;
    return t;
}

void DenseModel::newton_batch(const simd::NewtonParams& params, simd::PointsMut z,
                              std::span<std::uint8_t> converged) const {
    simd::newton_harmonic({a_, da_, b_, db_}, params, z, converged);
}

const char* to_string(Orientation o) noexcept {
    switch (o) {
        case Orientation::Preserving: return "preserving";
        case Orientation::Reversing: return "reversing";
        case Orientation::Singular: return "singular";
    }
    return "singular";
}

Orientation orientation_at(const HarmonicPoly& h, cplx z) noexcept {
    const double a = std::norm(eval(h.dp(), z));
    const double b = std::norm(eval(h.dq(), z));
    HarmonicJet j;
    j.jacobian = a - b;
    j.jac_tol = 1e-9 * (a + b + 1.0);
    return orientation_at(j);
}

Orientation orientation_at(const HarmonicJet& j) noexcept {
    if (j.jacobian > j.jac_tol) return Orientation::Preserving;
    if (j.jacobian < -j.jac_tol) return Orientation::Reversing;
    return Orientation::Singular;
}

ClosedCurve circle_curve(cplx center, double radius) {
    return [center, radius](double t) { return center + std::polar(radius, 2.0 * std::numbers::pi * t); };
}

ClosedCurve polyline_curve(std::vector<cplx> vertices) {
    if (vertices.size() < 2) throw Error(ErrorKind::InvalidArgument, "polyline needs at least two vertices");
    return [v = std::move(vertices)](double t) {
        const double u = (t - std::floor(t)) * static_cast<double>(v.size());
        const std::size_t i = std::min(static_cast<std::size_t>(u), v.size() - 1);
        const std::size_t j = i + 1 == v.size() ? 0 : i + 1;
        const double s = u - static_cast<double>(i);
        return v[i] + s * (v[j] - v[i]);
    };
}

namespace {

// Sample(t) returns F(curve(t)); Vanishes(t, v) decides whether v is
// indistinguishable from zero.
template <class Sample, class Vanishes>
int track_winding(const Sample& sample, const Vanishes& vanishes, int samples) {
    if (samples < 4) samples = 4;
    std::vector<double> ts(static_cast<std::size_t>(samples) + 1);
    std::vector<cplx> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = static_cast<double>(i) / samples;
        vals[i] = i + 1 == ts.size() ? vals[0] : sample(ts[i]);
    }
    auto check = [&](double t, cplx v) {
        if (vanishes(t, v)) throw Error(ErrorKind::CurveThroughZero, "|F| vanishes on the curve");
    };
    for (std::size_t i = 0; i < ts.size(); ++i) check(ts[i], vals[i]);

    double total = 0.0;
    struct Seg {
        double t0, t1;
        cplx f0, f1;
        int depth;
    };
    std::vector<Seg> stack;
    for (std::size_t i = ts.size() - 1; i-- > 0;) stack.push_back({ts[i], ts[i + 1], vals[i], vals[i + 1], 0});
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        const double step = std::arg(s.f1 / s.f0);
        if (std::abs(step) < std::numbers::pi / 2) {
            total += step;
            continue;
        }
        if (s.depth > 48) throw Error(ErrorKind::CurveThroughZero, "argument step does not resolve");
        const double tm = 0.5 * (s.t0 + s.t1);
        const cplx fm = sample(tm);
        check(tm, fm);
        // Push the right half first so segments are consumed in order.
        stack.push_back({tm, s.t1, fm, s.f1, s.depth + 1});
        stack.push_back({s.t0, tm, s.f0, fm, s.depth + 1});
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace

int winding_number(const std::function<cplx(cplx)>& F, const ClosedCurve& curve, int samples) {
    // The floor is 1e-13 of the largest |F| over the initial samples.
    const int ns = std::max(samples, 4);
    double scale = 0.0;
    for (int i = 0; i < ns; ++i) scale = std::max(scale, std::abs(F(curve(static_cast<double>(i) / ns))));
    const double floor = 1e-13 * scale;
    return track_winding([&](double t) { return F(curve(t)); },
                         [floor](double, cplx v) { return !(std::abs(v) > floor); }, samples);
}

int winding_number(const HarmonicModel& model, const ClosedCurve& curve, int samples) {
    // Scaling each component by a positive constant leaves the winding number
    // unchanged; equalizing them keeps thin image ellipses resolvable.
    const int ns = std::max(samples, 4);
    double sre = 0.0, sim = 0.0;
    for (int i = 0; i < ns; ++i) {
        const cplx v = model.value(curve(static_cast<double>(i) / ns));
        sre = std::max(sre, std::abs(v.real()));
        sim = std::max(sim, std::abs(v.imag()));
    }
    if (!(sre > 0.0) || !(sim > 0.0) || !std::isfinite(sre) || !std::isfinite(sim))
        throw Error(ErrorKind::CurveThroughZero, "h has a vanishing component along the curve");
    auto sample = [&](double t) {
        const cplx v = model.value(curve(t));
        return cplx(v.real() / sre, v.imag() / sim);
    };
    auto vanishes = [&](double t, cplx v) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return true;
        const HarmonicJet j = model.jet(curve(t));
        return std::abs(v.real()) * sre <= j.err_re && std::abs(v.imag()) * sim <= j.err_im;
    };
    return track_winding(sample, vanishes, samples);
}

double crude_enclosure_radius(const HarmonicPoly& h) {
    double s = 0.0;
    for (int k = 0; k < h.n(); ++k) s += std::abs(h.p()[k]);
    s += h.q().norm1();
    return 1.0 + s / std::abs(h.p().leading());
}

double enclosure_radius(const HarmonicPoly& h) {
    const int n = h.n();
    const double lead = std::abs(h.p().leading());
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = std::abs(h.p()[k]) + std::abs(h.q()[k]);
    // g(r) = lead - sum c_k r^{k-n} is increasing in r.
    auto g = [&](double r) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += c[static_cast<std::size_t>(k)] * std::pow(r, k - n);
        return lead - s;
    };
    double hi = crude_enclosure_radius(h);
    double lo = 0.0;
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) return 1e-3;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) hi = mid;
        else lo = mid;
    }
    return hi * (1.0 + 1e-6) + 1e-12;
}

namespace {

struct NewtonOutcome {
    cplx z;
    bool converged;
};

// Scalar Newton on (Re h, Im h), used for polishing and single starts.
NewtonOutcome newton_scalar(const HarmonicModel& h, cplx z, int iters, double step_cap) {
    for (int it = 0; it < iters; ++it) {
        const HarmonicJet j = h.jet(z);
        const cplx a = j.dA, b = j.dB;
        const double hr = j.h.real(), hi = j.h.imag();
        const double det = a.real() * b.real() + a.imag() * b.imag();
        if (det == 0.0) return {z, false};
        cplx dz = -cplx(b.real() * hr + a.imag() * hi, a.real() * hi - b.imag() * hr) / det;
        const double len = std::abs(dz);
        if (!std::isfinite(len)) return {z, false};
        if (len > step_cap) dz *= step_cap / len;
        z += dz;
        if (len <= 1e-14 * (1.0 + std::abs(z))) return {z, true};
    }
    return {z, false};
}

// Largest component residual relative to that component's rounding scale.
double component_residual(const HarmonicModel& h, cplx z) {
    const HarmonicJet j = h.jet(z);
    const double unit = 8.0 * (h.dense().n() + 1) * kEps;
    auto rel = [unit](double v, double err) {
        if (v == 0.0) return 0.0;
        return err > 0.0 ? std::abs(v) * unit / err : std::numeric_limits<double>::infinity();
    };
    return std::max(rel(j.h.real(), j.err_re), rel(j.h.imag(), j.err_im));
}

std::vector<cplx> hex_grid(double radius, double pitch) {
    std::vector<cplx> pts;
    const double dy = pitch * std::sqrt(3.0) / 2.0;
    const long rows = static_cast<long>(std::ceil(radius / dy));
    for (long j = -rows; j <= rows; ++j) {
        const double y = static_cast<double>(j) * dy;
        const double off = (j & 1) ? 0.5 * pitch : 0.0;
        const long cols = static_cast<long>(std::ceil(radius / pitch)) + 1;
        for (long i = -cols; i <= cols; ++i) {
            const cplx z(static_cast<double>(i) * pitch + off, y);
            if (std::abs(z) <= radius) pts.push_back(z);
        }
    }
    return pts;
}

long hex_grid_size(double radius, double pitch) {
    return static_cast<long>(std::numbers::pi * radius * radius / (pitch * pitch * std::sqrt(3.0) / 2.0)) + 1;
}

// Keeps distinct roots; duplicates within `radius` keep the smaller residual.
class RootMerger {
public:
    RootMerger(double radius) : radius_(radius), cell_(radius * 4.0) {}

    // Returns true when z was a new root.
    bool add(cplx z, double residual) {
        const long cx = static_cast<long>(std::floor(z.real() / cell_));
        const long cy = static_cast<long>(std::floor(z.imag() / cell_));
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(key(cx + dx, cy + dy));
                if (it == grid_.end()) continue;
                for (const std::size_t idx : it->second) {
                    if (std::abs(roots_[idx] - z) <= radius_) {
                        if (residual < residuals_[idx]) {
                            roots_[idx] = z;
                            residuals_[idx] = residual;
                        }
                        return false;
                    }
                }
            }
        grid_[key(cx, cy)].push_back(roots_.size());
        roots_.push_back(z);
        residuals_.push_back(residual);
        return true;
    }

    const std::vector<cplx>& roots() const noexcept { return roots_; }

private:
    static std::int64_t key(long x, long y) {
        return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::int64_t>(static_cast<std::uint32_t>(y));
    }
    double radius_;
    double cell_;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> grid_;
    std::vector<cplx> roots_;
    std::vector<double> residuals_;
};

}  // namespace

double uniqueness_radius(const HarmonicPoly& h, cplx z, double r0) {
    return uniqueness_radius(DenseModel(h), z, r0);
}

namespace {

double coeff_bound(const std::vector<cplx>& c, const std::vector<double>& e, std::size_t k) {
    return k < c.size() ? std::abs(c[k]) + e[k] : 0.0;
}

// sum_{k >= 1} bound_k rho^k
double increment_bound(const std::vector<cplx>& c, const std::vector<double>& e, double rho) {
    double s = 0.0, rp = rho;
    for (std::size_t k = 1; k < c.size(); ++k, rp *= rho) s += coeff_bound(c, e, k) * rp;
    return s;
}

// sum_{k >= 2} k bound_k r^{k-1}: bounds |F'(w) - F'(z)| on |w - z| <= r.
double derivative_drift(const std::vector<cplx>& c, const std::vector<double>& e, double r) {
    double s = 0.0, rp = r;
    for (std::size_t k = 2; k < c.size(); ++k, rp *= r) s += static_cast<double>(k) * coeff_bound(c, e, k) * rp;
    return s;
}

}  // namespace

double uniqueness_radius(const HarmonicModel& h, cplx z, double r0) {
    const TaylorPair t = h.taylor(z);
    const cplx a1 = t.a.size() > 1 ? t.a[1] : cplx{};
    const cplx b1 = t.b.size() > 1 ? t.b[1] : cplx{};
    // Real Jacobian rows: grad Re A = (Re A', -Im A'), grad Im B = (Im B', Re B').
    const double det = a1.real() * b1.real() + a1.imag() * b1.imag();
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return 0.0;
    // Column norms of the inverse.
    const double c1 = std::abs(b1) / std::abs(det);
    const double c2 = std::abs(a1) / std::abs(det);
    const double k0 = c1 * (t.ea.size() > 1 ? t.ea[1] : 0.0) + c2 * (t.eb.size() > 1 ? t.eb[1] : 0.0) + 1e-12;
    const double eta = c1 * (std::abs(t.a[0].real()) + t.ea[0]) + c2 * (std::abs(t.b[0].imag()) + t.eb[0]);
    double r = r0;
    for (int it = 0; it < 80 && r > 0.0; ++it, r *= 0.5) {
        const double kappa = k0 + c1 * derivative_drift(t.a, t.ea, r) + c2 * derivative_drift(t.b, t.eb, r);
        if (kappa < 1.0 && eta <= (1.0 - kappa) * r) return r;
    }
    return 0.0;
}

ExclusionResult exclusion_sweep(const HarmonicPoly& h, double radius, long cell_budget) {
    return exclusion_sweep(DenseModel(h), radius, cell_budget);
}

ExclusionResult exclusion_sweep(const HarmonicModel& h, double radius, long cell_budget) {
    ExclusionResult out;
    struct Cell {
        cplx c;
        double s;  // half side
    };
    const double s_min = 1e-10 * radius;
    std::vector<Cell> stack{{cplx{}, radius}};
    bool budget_hit = false;

    auto covered = [&](cplx c, double rho) {
        for (const CertifiedDisk& d : out.disks)
            if (std::abs(c - d.center) + rho <= d.radius) return true;
        return false;
    };

    while (!stack.empty()) {
        const Cell cell = stack.back();
        stack.pop_back();
        if (out.cells >= cell_budget) {
            budget_hit = true;
            out.unresolved.push_back(cell.c);
            continue;
        }
        ++out.cells;
        const double rho = cell.s * std::numbers::sqrt2;
        if (covered(cell.c, rho)) continue;

        // Exclusion: Re A or Im B keeps its sign on the cell.
        const TaylorPair t = h.taylor(cell.c);
        if (std::abs(t.a[0].real()) - t.ea[0] > increment_bound(t.a, t.ea, rho) * (1.0 + 1e-12)) continue;
        if (std::abs(t.b[0].imag()) - t.eb[0] > increment_bound(t.b, t.eb, rho) * (1.0 + 1e-12)) continue;

        // Inclusion: Newton from the center, then a uniqueness disk. The step
        // test may never fire at ill-conditioned zeros; the disk is the proof.
        const NewtonOutcome nw = newton_scalar(h, cell.c, 40, 2.0 * rho);
        if (std::abs(nw.z - cell.c) <= 3.0 * rho) {
            const double dist = std::abs(nw.z - cell.c);
            const double r = uniqueness_radius(h, nw.z, 4.0 * (dist + rho));
            if (r > 0.0) {
                bool merged = false;
                for (CertifiedDisk& d : out.disks)
                    if (std::abs(d.center - nw.z) < 0.5 * std::max(d.radius, r)) {
                        d.radius = std::max(d.radius, r - std::abs(d.center - nw.z));
                        merged = true;
                        break;
                    }
                if (!merged) out.disks.push_back({nw.z, r, nw.z});
                if (dist + rho <= r) continue;
            }
        }
        if (cell.s < s_min) {
            out.unresolved.push_back(cell.c);
            continue;
        }
        const double q = 0.5 * cell.s;
        for (const cplx d : {cplx{q, q}, cplx{-q, q}, cplx{-q, -q}, cplx{q, -q}}) stack.push_back({cell.c + d, q});
    }
    // Newton may stop short of the zero; iterate within each disk.
    for (CertifiedDisk& d : out.disks) {
        const NewtonOutcome nw = newton_scalar(h, d.center, 60, 0.5 * d.radius);
        if (std::abs(nw.z - d.center) <= d.radius && component_residual(h, nw.z) < component_residual(h, d.zero))
            d.zero = nw.z;
    }
    out.complete = !budget_hit && out.unresolved.empty();
    return out;
}

RootSet find_all_zeros(const HarmonicPoly& h, const SearchOptions& opts) {
    return find_all_zeros(DenseModel(h), opts);
}

RootSet find_all_zeros(const HarmonicModel& h, const SearchOptions& opts) {
    RootSet rs;
    const int n = h.dense().n();
    rs.degree = n;
    const double R = enclosure_radius(h.dense());
    rs.enclosure_radius = R;
    const double merge = opts.merge_radius > 0.0 ? opts.merge_radius : 1e-8 * (1.0 + R);
    RootMerger merger(merge);

    // Each disk provably holds one zero; disks whose centers fall inside an
    // earlier disk hold the same zero.
    std::vector<CertifiedDisk> disks;
    if (opts.exclusion_sweep) {
        const ExclusionResult ex = exclusion_sweep(h, R, opts.exclusion_cell_budget);
        for (const CertifiedDisk& d : ex.disks) {
            const bool seen = std::any_of(disks.begin(), disks.end(), [&](const CertifiedDisk& e) {
                return std::abs(e.center - d.zero) <= e.radius || std::abs(d.center - e.zero) <= d.radius;
            });
            if (!seen) disks.push_back(d);
        }
        rs.exclusion_complete = ex.complete;
        rs.exclusion_cells = ex.cells;
    }
    auto in_disk = [&](cplx z) {
        return std::any_of(disks.begin(), disks.end(),
                           [&](const CertifiedDisk& d) { return std::abs(z - d.center) <= d.radius; });
    };

    auto accept = [&](cplx z) {
        if (!(std::abs(z) <= R)) return false;
        const NewtonOutcome pol = newton_scalar(h, z, 3, R);
        if (component_residual(h, pol.z) < component_residual(h, z)) z = pol.z;
        if (component_residual(h, z) > kAcceptResidual) return false;
        return merger.add(z, std::abs(h.value(z))) && !in_disk(z);
    };

    simd::NewtonParams params;
    params.max_iter = opts.newton_iters;
    params.step_cap = 0.25 * R;
    params.tol = 1e-14;

    double pitch = opts.pitch > 0.0 ? opts.pitch : R / (8.0 * n);
    int quiet = 0;
    for (int level = 0; level < opts.max_levels; ++level, pitch *= 0.5) {
        if (rs.seeds + hex_grid_size(R, pitch) > opts.seed_budget) {
            rs.note = "seed budget exhausted before the refinement fixpoint";
            break;
        }
        const std::vector<cplx> seeds = hex_grid(R, pitch);
        std::vector<double> re(seeds.size()), im(seeds.size());
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            re[i] = seeds[i].real();
            im[i] = seeds[i].imag();
        }
        std::vector<std::uint8_t> conv(seeds.size());
        h.newton_batch(params, {re, im}, conv);
        rs.seeds += static_cast<long>(seeds.size());
        ++rs.levels;

        int added = 0;
        for (std::size_t i = 0; i < seeds.size(); ++i)
            // Lanes whose step test never fired still get the residual check.
            if (std::isfinite(re[i]) && std::isfinite(im[i]) && accept({re[i], im[i]})) ++added;
        if (level > 0) {
            quiet = added == 0 ? quiet + 1 : 0;
            if (quiet >= 2) {
                rs.fixpoint_reached = true;
                break;
            }
        }
    }

    std::vector<cplx> found;
    for (const CertifiedDisk& d : disks) found.push_back(d.zero);
    int outside = 0;
    for (const cplx z : merger.roots())
        if (!in_disk(z)) {
            found.push_back(z);
            ++outside;
        }
    if (rs.exclusion_complete && outside > 0) rs.note = "Newton found zeros outside the exclusion disks";

    // Certification circles.
    std::vector<std::size_t> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const cplx x = found[a], y = found[b];
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    for (const std::size_t i : order) {
        Root r;
        r.location = found[i];
        const HarmonicJet jr = h.jet(r.location);
        r.residual = std::abs(jr.h);
        r.orientation = orientation_at(jr);
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < found.size(); ++j)
            if (j != i) nearest = std::min(nearest, std::abs(found[j] - found[i]));
        r.cert_radius = std::min(nearest / 3.0, 1e-2 * R);
        try {
            r.winding = winding_number(h, circle_curve(r.location, r.cert_radius), 64);
        } catch (const Error&) {
            r.winding = 0;
        }
        r.certified = (r.orientation == Orientation::Preserving && r.winding == 1) ||
                      (r.orientation == Orientation::Reversing && r.winding == -1);
        if (!r.certified) {
            r.orientation = Orientation::Singular;
            rs.singular_detected = true;
        } else if (r.orientation == Orientation::Preserving) {
            ++rs.n_plus;
        } else {
            ++rs.n_minus;
        }
        rs.roots.push_back(r);
    }

    try {
        rs.outer_winding = winding_number(h, circle_curve(0.0, 1.05 * R + 1e-9), 256);
    } catch (const Error&) {
        rs.outer_winding = 0;
    }
    // A complete exclusion sweep accounts for every zero, so it stands in for
    // the refinement fixpoint.
    const bool complete = rs.exclusion_complete ? outside == 0 : rs.fixpoint_reached;
    rs.certified = !rs.singular_detected && complete && rs.outer_winding == n && rs.n_plus - rs.n_minus == n;
    return rs;
}

void require_regular(const RootSet& rs) {
    if (rs.singular_detected)
        throw Error(ErrorKind::SingularZeroDetected, "a zero failed +-1 winding certification");
}

int off_axes_count(const RootSet& rs) {
    return static_cast<int>(std::count_if(rs.roots.begin(), rs.roots.end(), [](const Root& r) {
        return std::abs(r.location.real()) > kAxisEps && std::abs(r.location.imag()) > kAxisEps;
    }));
}

Perturbation perturb_antianalytic(const HarmonicPoly& h, const RootSet& rs, int m_new) {
    if (rs.singular_detected)
        throw Error(ErrorKind::NotRegular, "perturbation needs a regular root set");
    if (m_new <= h.m() || m_new >= h.n())
        throw Error(ErrorKind::InvalidArgument, "need m < m_new < n");
    double delta = std::numeric_limits<double>::infinity();
    constexpr int kSamples = 512;
    for (const Root& r : rs.roots) {
        double min_h = std::numeric_limits<double>::infinity();
        double max_w = 0.0;
        for (int k = 0; k < kSamples; ++k) {
            const cplx z = r.location + std::polar(r.cert_radius, 2.0 * std::numbers::pi * k / kSamples);
            min_h = std::min(min_h, std::abs(eval_h(h, z)));
            max_w = std::max(max_w, std::pow(std::abs(z), m_new) + 1.0);
        }
        delta = std::min(delta, min_h / max_w);
    }
    if (!std::isfinite(delta)) delta = 1e-3;
    delta *= 0.5;
    return {HarmonicPoly(h.p(), h.q() + CPoly::monomial(m_new, delta)), delta};
}

}  // namespace harmlab
