#include "harmlab/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "harmlab/error.hpp"

namespace harmlab {

CPoly::CPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

CPoly::CPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

void CPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

CPoly CPoly::constant(cplx c) { return CPoly(std::vector<cplx>{c}); }

CPoly CPoly::monomial(int power, cplx c) {
    std::vector<cplx> v(static_cast<std::size_t>(power) + 1);
    v.back() = c;
    return CPoly(std::move(v));
}

CPoly CPoly::from_roots(std::span<const cplx> roots) {
    std::vector<cplx> c{1.0};
    for (const cplx r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return CPoly(std::move(c));
}

CPoly CPoly::linear_power(cplx a, int k) {
    std::vector<cplx> roots(static_cast<std::size_t>(k), a);
    return from_roots(roots);
}

cplx CPoly::operator[](int k) const noexcept {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

double CPoly::norm1() const noexcept {
    double s = 0.0;
    for (const cplx c : coeffs_) s += std::abs(c);
    return s;
}

bool CPoly::has_real_coefficients(double tol) const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [tol](cplx c) { return std::abs(c.imag()) <= tol; });
}

CPoly CPoly::conj_coeffs() const {
    std::vector<cplx> c(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), c.begin(),
                   [](cplx a) { return std::conj(a); });
    return CPoly(std::move(c));
}

CPoly operator+(const CPoly& a, const CPoly& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return CPoly(std::move(c));
}

CPoly operator-(const CPoly& a, const CPoly& b) { return a + (-b); }

CPoly operator*(const CPoly& a, const CPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return CPoly(std::move(c));
}

CPoly operator*(cplx s, const CPoly& a) {
    std::vector<cplx> c(a.coeffs_);
    for (cplx& x : c) x *= s;
    return CPoly(std::move(c));
}

CPoly CPoly::operator-() const { return cplx{-1.0} * *this; }

cplx eval(const CPoly& p, cplx z) noexcept {
    const auto& c = p.coeffs();
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void eval_with_derivative(const CPoly& p, cplx z, cplx& value, cplx& deriv) noexcept {
    const auto& c = p.coeffs();
    value = {};
    deriv = {};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        deriv = deriv * z + value;
        value = value * z + *it;
    }
}

double eval_scale(const CPoly& p, cplx z) noexcept {
    const double r = std::abs(z);
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

CPoly derivative(const CPoly& p) {
    if (p.degree() < 1) return {};
    std::vector<cplx> d(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) d[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p[k];
    return CPoly(std::move(d));
}

std::vector<cplx> taylor_coefficients(const CPoly& p, cplx z) {
    // Repeated synthetic division (Taylor shift).
    std::vector<cplx> c = p.coeffs();
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) c[k - 1] += z * c[k];
    return c;
}

std::vector<double> taylor_magnitudes(const CPoly& p, double r) {
    std::vector<double> c(p.coeffs().size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::abs(p.coeffs()[k]);
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) c[k - 1] += r * c[k];
    return c;
}

double cauchy_bound(const CPoly& p) {
    if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "cauchy_bound needs degree >= 1");
    const double lead = std::abs(p.leading());
    double m = 0.0;
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p[k]));
    return 1.0 + m / lead;
}

namespace {

constexpr double kRootResidual = 1e-10;

double backward_error(const CPoly& p, cplx z) {
    const double s = eval_scale(p, z);
    return s > 0.0 ? std::abs(eval(p, z)) / s : 0.0;
}

std::vector<cplx> aberth(const CPoly& monic) {
    const int n = monic.degree();
    std::vector<cplx> z(static_cast<std::size_t>(n));
    if (n == 1) {
        z[0] = -monic[0];
        return z;
    }
    // Start on a circle whose radius is the geometric mean of root moduli.
    const double r = std::pow(std::max(std::abs(monic[0]), 1e-300), 1.0 / n);
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(r, 2.0 * M_PI * k / n + 0.4);

    std::vector<bool> done(z.size(), false);
    for (int iter = 0; iter < 800; ++iter) {
        bool all_done = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            cplx v, d;
            eval_with_derivative(monic, z[i], v, d);
            if (std::abs(v) <= 1e-16 * eval_scale(monic, z[i])) {
                done[i] = true;
                continue;
            }
            all_done = false;
            const cplx w = d == cplx{} ? cplx{1e-8} : v / d;
            cplx s{};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i && z[i] != z[j]) s += 1.0 / (z[i] - z[j]);
            const cplx denom = 1.0 - w * s;
            const cplx step = denom == cplx{} ? w : w / denom;
            z[i] -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z[i]))) done[i] = true;
        }
        if (all_done) break;
    }
    return z;
}

}  // namespace

std::vector<cplx> all_roots(const CPoly& p) {
    if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "all_roots needs degree >= 1");
    // Exact zero roots are split off first.
    int zeros = 0;
    while (p[zeros] == cplx{}) ++zeros;
    std::vector<cplx> rest(p.coeffs().begin() + zeros, p.coeffs().end());
    const cplx lead = rest.back();
    for (cplx& c : rest) c /= lead;
    const CPoly monic(std::move(rest));

    std::vector<cplx> roots(static_cast<std::size_t>(zeros), cplx{});
    if (monic.degree() >= 1) {
        std::vector<cplx> z = aberth(monic);
        for (cplx& r : z) {
            // Newton polish, accepted only while the residual improves.
            for (int k = 0; k < 3; ++k) {
                cplx v, d;
                eval_with_derivative(monic, r, v, d);
                if (d == cplx{}) break;
                const cplx cand = r - v / d;
                if (backward_error(monic, cand) < backward_error(monic, r)) r = cand;
                else break;
            }
            if (backward_error(monic, r) > kRootResidual)
                throw Error(ErrorKind::NonConvergence, "root residual target not reached");
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

std::vector<RootCluster> cluster_roots(std::span<const cplx> roots, double radius) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);

    std::vector<RootCluster> out;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(out.size());
            out.push_back({roots[i], 0});
            out.back().center = {};
        }
        RootCluster& c = out[static_cast<std::size_t>(slot[r])];
        c.center += roots[i];
        ++c.multiplicity;
    }
    for (RootCluster& c : out) c.center /= static_cast<double>(c.multiplicity);
    return out;
}

RationalFn::RationalFn(CPoly numerator, CPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
}

cplx RationalFn::operator()(cplx z) const noexcept { return eval(num_, z) / eval(den_, z); }

void RationalFn::eval_with_derivative(cplx z, cplx& value, cplx& deriv) const noexcept {
    cplx n, dn, d, dd;
    harmlab::eval_with_derivative(num_, z, n, dn);
    harmlab::eval_with_derivative(den_, z, d, dd);
    value = n / d;
    deriv = (dn * d - n * dd) / (d * d);
}

std::vector<cplx> RationalFn::taylor(cplx z, int order) const {
    const std::vector<cplx> a = taylor_coefficients(num_, z);
    const std::vector<cplx> b = taylor_coefficients(den_, z);
    auto at = [](const std::vector<cplx>& v, int k) {
        return k < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(k)] : cplx{};
    };
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        cplx s = at(a, k);
        for (int j = 1; j <= k; ++j) s -= at(b, j) * c[static_cast<std::size_t>(k - j)];
        c[static_cast<std::size_t>(k)] = s / b[0];
    }
    return c;
}

CPoly RationalFn::derivative_numerator() const {
    return derivative(num_) * den_ - num_ * derivative(den_);
}

std::vector<cplx> RationalFn::common_roots(double tol) const {
    std::vector<cplx> out;
    if (num_.degree() < 1 || den_.degree() < 1) return out;
    const auto nr = all_roots(num_);
    const auto dr = all_roots(den_);
    for (const cplx a : nr)
        for (const cplx b : dr)
            if (std::abs(a - b) <= tol * std::max(1.0, std::abs(a))) {
                out.push_back(a);
                break;
            }
    return out;
}

}  // namespace harmlab
