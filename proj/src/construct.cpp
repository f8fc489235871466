#include "harmlab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <numbers>

#include "harmlab/error.hpp"

namespace harmlab {

CPoly build_S(int n, cplx a) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "build_S needs n >= 1");
    return CPoly::linear_power(a, n - 1) * CPoly{static_cast<double>(n - 1) * a, cplx{1.0}};
}

namespace {

using Matrix = std::vector<std::vector<cplx>>;

// Dense LU with partial pivoting, one step of iterative refinement.
std::vector<cplx> solve_dense(const Matrix& A, const std::vector<cplx>& rhs) {
    const std::size_t n = rhs.size();
    Matrix lu = A;
    std::vector<std::size_t> piv(n);
    double amax = 0.0;
    for (const auto& row : A)
        for (const cplx v : row) amax = std::max(amax, std::abs(v));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu[i][k]) > std::abs(lu[best][k])) best = i;
        if (std::abs(lu[best][k]) <= 1e-13 * amax)
            throw Error(ErrorKind::SingularSystem, "coefficient-matching system is singular");
        std::swap(lu[k], lu[best]);
        piv[k] = best;
        for (std::size_t i = k + 1; i < n; ++i) {
            lu[i][k] /= lu[k][k];
            for (std::size_t j = k + 1; j < n; ++j) lu[i][j] -= lu[i][k] * lu[k][j];
        }
    }
    auto apply = [&](std::vector<cplx> b) {
        for (std::size_t k = 0; k < n; ++k) std::swap(b[k], b[piv[k]]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) b[i] -= lu[i][j] * b[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) b[i] -= lu[i][j] * b[j];
            b[i] /= lu[i][i];
        }
        return b;
    };
    std::vector<cplx> x = apply(rhs);
    std::vector<cplx> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = rhs[i];
        for (std::size_t j = 0; j < n; ++j) r[i] -= A[i][j] * x[j];
    }
    const std::vector<cplx> dx = apply(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

}  // namespace

ConstructionResult solve_T(const ConstructionParams& params) {
    const int n = params.n, m = params.m;
    if (m < 0 || n <= m) throw Error(ErrorKind::InvalidArgument, "construction needs n > m >= 0");
    ConstructionResult res;
    res.params = params;
    res.S = build_S(n, params.a);
    const CPoly beta = CPoly::linear_power(params.b, m + 1);
    const int d = n - m - 1;

    // T_k = beta_{k-d} + sum_j t_j beta_{k-j}; match T_k = S_k for k = m+1..n-1.
    std::vector<cplx> t(static_cast<std::size_t>(d));
    if (d > 0) {
        Matrix A(static_cast<std::size_t>(d), std::vector<cplx>(static_cast<std::size_t>(d)));
        std::vector<cplx> rhs(static_cast<std::size_t>(d));
        for (int r = 0; r < d; ++r) {
            const int k = m + 1 + r;
            for (int j = 0; j < d; ++j) A[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = beta[k - j];
            rhs[static_cast<std::size_t>(r)] = res.S[k] - beta[k - d];
        }
        t = solve_dense(A, rhs);
    }
    res.t_coeffs = t;
    std::vector<cplx> u(t);
    u.push_back(1.0);
    res.U = CPoly(std::move(u));
    res.T = beta * res.U;

    const CPoly diff = res.S - res.T;
    double smax = 0.0, defect = 0.0;
    for (int k = 0; k <= n; ++k) smax = std::max(smax, std::abs(res.S[k]));
    std::vector<cplx> qc(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= diff.degree(); ++k) {
        if (k <= m) qc[static_cast<std::size_t>(k)] = diff[k];
        else defect = std::max(defect, std::abs(diff[k]));
    }
    res.degree_defect = smax > 0.0 ? defect / smax : defect;
    res.q = CPoly(std::move(qc));
    res.p = res.S + res.T;
    return res;
}

namespace {

cplx ipow(cplx w, int k) {
    cplx r = 1.0;
    for (int j = 0; j < k; ++j) r *= w;
    return r;
}

}  // namespace

ConstructionModel::ConstructionModel(const ConstructionResult& c)
    : dense_(c.harmonic()),
      S_(c.S),
      dS_(derivative(c.S)),
      U_(c.U),
      dU_(derivative(c.U)),
      s_(S_.coeffs()),
      ds_(dS_.coeffs()),
      u_(U_.coeffs()),
      du_(dU_.coeffs()),
      b_(c.params.b),
      k_(c.params.m + 1) {}

HarmonicJet ConstructionModel::jet(cplx z) const {
    const cplx w = z - b_;
    const cplx wk1 = ipow(w, k_ - 1);
    const cplx wk = wk1 * w;
    const cplx u = eval(U_, z);
    const cplx t = wk * u;
    const cplx dt = static_cast<double>(k_) * wk1 * u + wk * eval(dU_, z);
    const cplx s = eval(S_, z), ds = eval(dS_, z);
    const double aw = std::abs(w);
    const double su = eval_scale(U_, z);
    // Rounding of w = z - b is relative to |z| + |b|; it enters T through k w^{k-1}.
    const double tscale = (std::pow(aw, k_) + k_ * std::pow(aw, k_ - 1) * (std::abs(z) + std::abs(b_))) * su;
    const double sscale = eval_scale(S_, z);
    const double rel = 8.0 * (dense_.n() + 1) * std::numeric_limits<double>::epsilon();
    HarmonicJet j;
    j.h = cplx(2.0 * s.real(), 2.0 * t.imag());
    j.dp = ds + dt;
    j.dq = ds - dt;
    j.dA = 2.0 * ds;
    j.dB = 2.0 * dt;
    j.scale = 2.0 * (sscale + tscale);
    j.err_re = 2.0 * rel * sscale;
    j.err_im = 2.0 * rel * tscale;
    // |S' + T'|^2 - |S' - T'|^2 without the cancellation.
    j.jacobian = 4.0 * (ds * std::conj(dt)).real();
    j.jac_tol = 1e-9 * std::abs(j.dA) * std::abs(j.dB);
    return j;
}

TaylorPair ConstructionModel::taylor(cplx c) const {
    const double rel = 16.0 * (dense_.n() + 1) * std::numeric_limits<double>::epsilon();
    const std::vector<cplx> ts = taylor_coefficients(S_, c);
    const std::vector<double> ms = taylor_magnitudes(S_, std::abs(c));
    const std::vector<cplx> tu = taylor_coefficients(U_, c);
    const std::vector<double> mu = taylor_magnitudes(U_, std::abs(c));
    // (w0 + u)^k = sum_j C(k, j) w0^{k-j} u^j. dw bounds the rounding of w0.
    const cplx w0 = c - b_;
    const double aw = std::abs(w0);
    const double dw = std::numeric_limits<double>::epsilon() * (std::abs(c) + std::abs(b_));
    const std::size_t nw = static_cast<std::size_t>(k_) + 1;
    std::vector<cplx> tw(nw);
    std::vector<double> mw(nw), ew(nw);
    double binom = 1.0;
    for (int j = 0; j <= k_; ++j) {
        tw[static_cast<std::size_t>(j)] = binom * ipow(w0, k_ - j);
        mw[static_cast<std::size_t>(j)] = binom * std::pow(aw + dw, k_ - j);
        ew[static_cast<std::size_t>(j)] = k_ - j > 0 ? binom * (k_ - j) * std::pow(aw + dw, k_ - j - 1) * dw : 0.0;
        binom = binom * (k_ - j) / (j + 1);
    }
    const std::size_t nt = nw + tu.size() - 1;
    std::vector<cplx> tt(nt);
    std::vector<double> et(nt, 0.0);
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < tu.size(); ++j) {
            tt[i + j] += tw[i] * tu[j];
            et[i + j] += rel * mw[i] * mu[j] + ew[i] * mu[j];
        }
    TaylorPair out;
    out.a.resize(ts.size());
    out.ea.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out.a[i] = 2.0 * ts[i];
        out.ea[i] = 2.0 * rel * ms[i];
    }
    out.b.resize(nt);
    out.eb.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        out.b[i] = 2.0 * tt[i];
        out.eb[i] = 2.0 * et[i];
    }
    return out;
}

void ConstructionModel::newton_batch(const simd::NewtonParams& params, simd::PointsMut z,
                                     std::span<std::uint8_t> converged) const {
    simd::newton_structured({s_, ds_, u_, du_, b_, k_}, params, z, converged);
}

ConstructionRoots count_construction_roots(const ConstructionParams& params, const SearchOptions& opts) {
    ConstructionRoots out{solve_T(params), {}, true};
    const ConstructionModel model(out.construction);
    out.roots = find_all_zeros(model, opts);
    // err / rel recovers each component's rounding scale.
    const double rel = 8.0 * (params.n + 1) * std::numeric_limits<double>::epsilon();
    for (const Root& r : out.roots.roots) {
        const HarmonicJet j = model.jet(r.location);
        if (std::abs(j.h.real()) > 1e-7 * j.err_re / rel || std::abs(j.h.imag()) > 1e-7 * j.err_im / rel)
            out.on_both_curves = false;
    }
    return out;
}

cplx default_experiment_eps() { return std::polar(0.003, 0.7); }

ExcessRecord excessive_zeros_experiment(int n, cplx eps, const SearchOptions& opts) {
    if (n < 4) throw Error(ErrorKind::InvalidArgument, "experiment needs n >= 4");
    if (eps == cplx{} || std::abs(eps) > 1e-2) throw Error(ErrorKind::InvalidArgument, "need 0 < |eps| <= 1e-2");
    ExcessRecord rec;
    rec.n = n;
    rec.m = n - 2;
    rec.a = 0.0;
    rec.b = std::polar(1.0, std::numbers::pi / (2.0 * n)) + eps;
    const ConstructionRoots cr = count_construction_roots({rec.n, rec.m, rec.a, rec.b}, opts);
    rec.total = static_cast<int>(cr.roots.size());
    rec.excessive = rec.total - construction_lower_bound(rec.n, rec.m);
    rec.certified = cr.roots.certified;
    return rec;
}

ScanTable conjecture_scan(int n_max, cplx eps, const SearchOptions& opts) {
    ScanTable table;
    for (int n = 4; n <= n_max; ++n) {
        ScanRow row{excessive_zeros_experiment(n, eps, opts), n * n - 2 * n + 4};
        if (!row.record.certified) table.conclusive = false;
        if (!table.rows.empty() && row.record.excessive > table.rows.back().record.excessive)
            table.jumps.push_back(n);
        table.rows.push_back(row);
    }
    return table;
}

HarmonicPoly wilmshurst_instance(int n, double magnitude, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "wilmshurst_instance needs n >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> r(static_cast<std::size_t>(n));
    for (double& c : r) c = unit(rng);
    r[0] = 0.5 + 0.5 * std::abs(r[0]);
    double top = 0.0;
    for (double c : r) top = std::max(top, std::abs(c));
    std::vector<cplx> ir(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) ir[k] = cplx(0.0, magnitude * r[k] / top);
    const CPoly zn = CPoly::monomial(n, 1.0), w = CPoly::linear_power(1.0, n), R(ir);
    return HarmonicPoly(zn + w + R, zn - w - R);
}

WilmshurstRun wilmshurst_sharpness(int n, double magnitude, std::uint64_t seed, int retries,
                                   const SearchOptions& opts) {
    WilmshurstRun run{wilmshurst_instance(n, magnitude, seed), {}, 0, false};
    for (int attempt = 0; attempt <= retries; ++attempt) {
        if (attempt > 0) run.h = wilmshurst_instance(n, magnitude, seed + static_cast<std::uint64_t>(attempt));
        run.roots = find_all_zeros(run.h, opts);
        run.attempts = attempt + 1;
        run.sharp = run.roots.certified && static_cast<int>(run.roots.size()) == n * n;
        if (run.sharp) break;
    }
    return run;
}

}  // namespace harmlab
