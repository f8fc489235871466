// AVX2 kernels. Compiled with -mavx2 -ffp-contract=off; only reached through
// the dispatcher after a CPU feature check.
#include "harmlab/simd.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <array>

namespace harmlab::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

inline void horner4(std::span<const cplx> c, __m256d zr, __m256d zi, __m256d& outr, __m256d& outi) {
    __m256d ar = _mm256_setzero_pd();
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t k = c.size(); k-- > 0;) {
        const __m256d cr = _mm256_set1_pd(c[k].real());
        const __m256d ci = _mm256_set1_pd(c[k].imag());
        const __m256d nr = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ar, zr), _mm256_mul_pd(ai, zi)), cr);
        const __m256d ni = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ar, zi), _mm256_mul_pd(ai, zr)), ci);
        ar = nr;
        ai = ni;
    }
    outr = ar;
    outi = ai;
}

// Loads four lanes starting at i, padding past the end with the last element.
inline __m256d load_padded(std::span<const double> v, std::size_t i) {
    if (i + kLanes <= v.size()) return _mm256_loadu_pd(v.data() + i);
    std::array<double, kLanes> tmp{};
    for (std::size_t l = 0; l < kLanes; ++l) tmp[l] = v[std::min(i + l, v.size() - 1)];
    return _mm256_loadu_pd(tmp.data());
}

inline void store_partial(std::span<double> v, std::size_t i, __m256d x) {
    if (i + kLanes <= v.size()) {
        _mm256_storeu_pd(v.data() + i, x);
        return;
    }
    std::array<double, kLanes> tmp{};
    _mm256_storeu_pd(tmp.data(), x);
    for (std::size_t l = 0; i + l < v.size(); ++l) v[i + l] = tmp[l];
}

}  // namespace

void eval_poly_avx2(std::span<const cplx> coeffs, PointsView z, PointsMut out) {
    for (std::size_t i = 0; i < z.re.size(); i += kLanes) {
        __m256d r, im;
        horner4(coeffs, load_padded(z.re, i), load_padded(z.im, i), r, im);
        store_partial(out.re, i, r);
        store_partial(out.im, i, im);
    }
}

void eval_harmonic_avx2(std::span<const cplx> p, std::span<const cplx> q, PointsView z, PointsMut out) {
    for (std::size_t i = 0; i < z.re.size(); i += kLanes) {
        const __m256d zr = load_padded(z.re, i);
        const __m256d zi = load_padded(z.im, i);
        __m256d pr, pi, qr, qi;
        horner4(p, zr, zi, pr, pi);
        horner4(q, zr, zi, qr, qi);
        store_partial(out.re, i, _mm256_add_pd(pr, qr));
        store_partial(out.im, i, _mm256_sub_pd(pi, qi));
    }
}

namespace {

// Jet(zr, zi, hr, hi, ar, ai, br, bi) fills h, A' and B' for four lanes.
template <class Jet>
void newton_loop4(const Jet& jet, const NewtonParams& params, PointsMut z, std::span<std::uint8_t> converged) {
    const std::span<const double> zre(z.re.data(), z.re.size());
    const std::span<const double> zim(z.im.data(), z.im.size());
    const __m256d cap = _mm256_set1_pd(params.step_cap);
    const __m256d tol = _mm256_set1_pd(params.tol);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d huge = _mm256_set1_pd(1e300);
    const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));

    for (std::size_t i = 0; i < z.re.size(); i += kLanes) {
        __m256d zr = load_padded(zre, i);
        __m256d zi = load_padded(zim, i);
        __m256d active = all;
        __m256d done = _mm256_setzero_pd();
        for (int it = 0; it < params.max_iter && _mm256_movemask_pd(active) != 0; ++it) {
            __m256d hr, hi, ar, ai, br, bi;
            jet(zr, zi, hr, hi, ar, ai, br, bi);
            const __m256d zero = _mm256_setzero_pd();
            const __m256d det = _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
            const __m256d numr = _mm256_sub_pd(zero, _mm256_add_pd(_mm256_mul_pd(br, hr), _mm256_mul_pd(ai, hi)));
            const __m256d numi = _mm256_sub_pd(zero, _mm256_sub_pd(_mm256_mul_pd(ar, hi), _mm256_mul_pd(bi, hr)));
            __m256d dzr = _mm256_div_pd(numr, det);
            __m256d dzi = _mm256_div_pd(numi, det);
            const __m256d len = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dzr, dzr), _mm256_mul_pd(dzi, dzi)));
            const __m256d bad = _mm256_or_pd(_mm256_cmp_pd(len, len, _CMP_UNORD_Q),
                                             _mm256_cmp_pd(len, huge, _CMP_GT_OQ));
            active = _mm256_andnot_pd(bad, active);
            const __m256d over = _mm256_cmp_pd(len, cap, _CMP_GT_OQ);
            const __m256d s = _mm256_div_pd(cap, len);
            dzr = _mm256_blendv_pd(dzr, _mm256_mul_pd(dzr, s), over);
            dzi = _mm256_blendv_pd(dzi, _mm256_mul_pd(dzi, s), over);
            zr = _mm256_blendv_pd(zr, _mm256_add_pd(zr, dzr), active);
            zi = _mm256_blendv_pd(zi, _mm256_add_pd(zi, dzi), active);
            const __m256d mag = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(zr, zr), _mm256_mul_pd(zi, zi)));
            const __m256d conv = _mm256_and_pd(
                _mm256_cmp_pd(len, _mm256_mul_pd(tol, _mm256_add_pd(one, mag)), _CMP_LE_OQ), active);
            done = _mm256_or_pd(done, conv);
            active = _mm256_andnot_pd(conv, active);
        }
        store_partial(z.re, i, zr);
        store_partial(z.im, i, zi);
        const int bits = _mm256_movemask_pd(done);
        for (std::size_t l = 0; l < kLanes && i + l < z.re.size(); ++l)
            converged[i + l] = static_cast<std::uint8_t>((bits >> l) & 1);
    }
}

inline __m256d cmul_re(__m256d ar, __m256d ai, __m256d br, __m256d bi) {
    return _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
}
inline __m256d cmul_im(__m256d ar, __m256d ai, __m256d br, __m256d bi) {
    return _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
}

}  // namespace

void newton_harmonic_avx2(const NewtonPolys& polys, const NewtonParams& params, PointsMut z,
                          std::span<std::uint8_t> converged) {
    auto jet = [&](__m256d zr, __m256d zi, __m256d& hr, __m256d& hi, __m256d& ar, __m256d& ai, __m256d& br,
                   __m256d& bi) {
        __m256d ai0, br0;
        horner4(polys.A, zr, zi, hr, ai0);
        horner4(polys.B, zr, zi, br0, hi);
        horner4(polys.dA, zr, zi, ar, ai);
        horner4(polys.dB, zr, zi, br, bi);
    };
    newton_loop4(jet, params, z, converged);
}

void newton_structured_avx2(const StructuredPolys& polys, const NewtonParams& params, PointsMut z,
                            std::span<std::uint8_t> converged) {
    const __m256d b_r = _mm256_set1_pd(polys.b.real());
    const __m256d b_i = _mm256_set1_pd(polys.b.imag());
    const __m256d kd = _mm256_set1_pd(static_cast<double>(polys.k));
    const __m256d two = _mm256_set1_pd(2.0);
    auto jet = [&](__m256d zr, __m256d zi, __m256d& hr, __m256d& hi, __m256d& ar, __m256d& ai, __m256d& br,
                   __m256d& bi) {
        __m256d sr, si, dsr, dsi, ur, ui, dur, dui;
        horner4(polys.S, zr, zi, sr, si);
        horner4(polys.dS, zr, zi, dsr, dsi);
        horner4(polys.U, zr, zi, ur, ui);
        horner4(polys.dU, zr, zi, dur, dui);
        const __m256d wr = _mm256_sub_pd(zr, b_r), wi = _mm256_sub_pd(zi, b_i);
        __m256d pr = _mm256_set1_pd(1.0), pim = _mm256_setzero_pd();
        for (int j = 1; j < polys.k; ++j) {
            const __m256d nr = cmul_re(pr, pim, wr, wi);
            const __m256d ni = cmul_im(pr, pim, wr, wi);
            pr = nr;
            pim = ni;
        }
        const __m256d wkr = cmul_re(pr, pim, wr, wi);
        const __m256d wki = cmul_im(pr, pim, wr, wi);
        const __m256d ti = cmul_im(wkr, wki, ur, ui);
        const __m256d ar1 = _mm256_mul_pd(kd, cmul_re(pr, pim, ur, ui));
        const __m256d ai1 = _mm256_mul_pd(kd, cmul_im(pr, pim, ur, ui));
        const __m256d dtr = _mm256_add_pd(ar1, cmul_re(wkr, wki, dur, dui));
        const __m256d dti = _mm256_add_pd(ai1, cmul_im(wkr, wki, dur, dui));
        hr = _mm256_mul_pd(two, sr);
        hi = _mm256_mul_pd(two, ti);
        (void)si;
        ar = _mm256_mul_pd(two, dsr);
        ai = _mm256_mul_pd(two, dsi);
        br = _mm256_mul_pd(two, dtr);
        bi = _mm256_mul_pd(two, dti);
    };
    newton_loop4(jet, params, z, converged);
}

void winding_numbers_avx2(PointsView poly, PointsView q, std::span<int> out) {
    const std::size_t n = poly.re.size();
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < q.re.size(); i += kLanes) {
        const __m256d px = load_padded(q.re, i);
        const __m256d py = load_padded(q.im, i);
        __m256d w = zero;
        for (std::size_t e = 0; e < n; ++e) {
            const std::size_t f = e + 1 == n ? 0 : e + 1;
            const __m256d x0 = _mm256_set1_pd(poly.re[e]), y0 = _mm256_set1_pd(poly.im[e]);
            const __m256d x1 = _mm256_set1_pd(poly.re[f]), y1 = _mm256_set1_pd(poly.im[f]);
            const __m256d left = _mm256_sub_pd(_mm256_mul_pd(_mm256_sub_pd(x1, x0), _mm256_sub_pd(py, y0)),
                                               _mm256_mul_pd(_mm256_sub_pd(px, x0), _mm256_sub_pd(y1, y0)));
            const __m256d lower = _mm256_cmp_pd(y0, py, _CMP_LE_OQ);
            const __m256d up = _mm256_and_pd(
                lower, _mm256_and_pd(_mm256_cmp_pd(y1, py, _CMP_GT_OQ), _mm256_cmp_pd(left, zero, _CMP_GT_OQ)));
            const __m256d down = _mm256_andnot_pd(
                lower, _mm256_and_pd(_mm256_cmp_pd(y1, py, _CMP_LE_OQ), _mm256_cmp_pd(left, zero, _CMP_LT_OQ)));
            w = _mm256_add_pd(w, _mm256_and_pd(up, one));
            w = _mm256_sub_pd(w, _mm256_and_pd(down, one));
        }
        std::array<double, kLanes> tmp{};
        _mm256_storeu_pd(tmp.data(), w);
        for (std::size_t l = 0; l < kLanes && i + l < q.re.size(); ++l) out[i + l] = static_cast<int>(tmp[l]);
    }
}

}  // namespace harmlab::simd::detail

#else  // !__AVX2__

namespace harmlab::simd::detail {
// Non-x86 builds route everything to the reference kernels.
void eval_poly_avx2(std::span<const cplx> c, PointsView z, PointsMut o) { eval_poly_scalar(c, z, o); }
void eval_harmonic_avx2(std::span<const cplx> p, std::span<const cplx> q, PointsView z, PointsMut o) {
    eval_harmonic_scalar(p, q, z, o);
}
void newton_harmonic_avx2(const NewtonPolys& ps, const NewtonParams& pr, PointsMut z, std::span<std::uint8_t> c) {
    newton_harmonic_scalar(ps, pr, z, c);
}
void newton_structured_avx2(const StructuredPolys& ps, const NewtonParams& pr, PointsMut z,
                            std::span<std::uint8_t> c) {
    newton_structured_scalar(ps, pr, z, c);
}
void winding_numbers_avx2(PointsView p, PointsView q, std::span<int> o) { winding_numbers_scalar(p, q, o); }
}  // namespace harmlab::simd::detail

#endif
