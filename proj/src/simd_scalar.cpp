#include <cmath>

#include "harmlab/simd.hpp"

namespace harmlab::simd::detail {

namespace {

// Complex Horner with explicit real arithmetic; the AVX2 kernels mirror this
// operation order exactly.
inline void horner(std::span<const cplx> c, double zr, double zi, double& outr, double& outi) {
    double ar = 0.0, ai = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        const double nr = (ar * zr - ai * zi) + c[k].real();
        const double ni = (ar * zi + ai * zr) + c[k].imag();
        ar = nr;
        ai = ni;
    }
    outr = ar;
    outi = ai;
}

}  // namespace

void eval_poly_scalar(std::span<const cplx> coeffs, PointsView z, PointsMut out) {
    for (std::size_t i = 0; i < z.re.size(); ++i) horner(coeffs, z.re[i], z.im[i], out.re[i], out.im[i]);
}

void eval_harmonic_scalar(std::span<const cplx> p, std::span<const cplx> q, PointsView z, PointsMut out) {
    for (std::size_t i = 0; i < z.re.size(); ++i) {
        double pr, pi, qr, qi;
        horner(p, z.re[i], z.im[i], pr, pi);
        horner(q, z.re[i], z.im[i], qr, qi);
        out.re[i] = pr + qr;
        out.im[i] = pi - qi;
    }
}

namespace {

// h = hr + i hi with Re h = Re A, Im h = Im B; a = A', b = B'. The real
// Jacobian is [[ar, -ai], [bi, br]]. Writes the (capped) step; returns false
// when the step is not finite.
inline bool newton_step(double hr, double hi, double ar, double ai, double br, double bi,
                        double cap, double& dzr, double& dzi, double& len) {
    const double det = ar * br + ai * bi;
    dzr = -(br * hr + ai * hi) / det;
    dzi = -(ar * hi - bi * hr) / det;
    len = std::sqrt(dzr * dzr + dzi * dzi);
    if (!(len == len) || len > 1e300) return false;
    if (len > cap) {
        const double s = cap / len;
        dzr = dzr * s;
        dzi = dzi * s;
    }
    return true;
}

// Jet(zr, zi, hr, hi, ar, ai, br, bi) fills h, A' and B'.
template <class Jet>
void newton_loop(const Jet& jet, const NewtonParams& params, PointsMut z, std::span<std::uint8_t> converged) {
    for (std::size_t i = 0; i < z.re.size(); ++i) {
        double zr = z.re[i], zi = z.im[i];
        std::uint8_t done = 0;
        for (int it = 0; it < params.max_iter; ++it) {
            double hr, hi, ar, ai, br, bi, dzr, dzi, len;
            jet(zr, zi, hr, hi, ar, ai, br, bi);
            if (!newton_step(hr, hi, ar, ai, br, bi, params.step_cap, dzr, dzi, len)) break;
            zr = zr + dzr;
            zi = zi + dzi;
            const double mag = std::sqrt(zr * zr + zi * zi);
            if (len <= params.tol * (1.0 + mag)) {
                done = 1;
                break;
            }
        }
        z.re[i] = zr;
        z.im[i] = zi;
        converged[i] = done;
    }
}

}  // namespace

void newton_harmonic_scalar(const NewtonPolys& polys, const NewtonParams& params, PointsMut z,
                            std::span<std::uint8_t> converged) {
    auto jet = [&](double zr, double zi, double& hr, double& hi, double& ar, double& ai, double& br,
                   double& bi) {
        double ai0, br0;
        horner(polys.A, zr, zi, hr, ai0);
        horner(polys.B, zr, zi, br0, hi);
        horner(polys.dA, zr, zi, ar, ai);
        horner(polys.dB, zr, zi, br, bi);
    };
    newton_loop(jet, params, z, converged);
}

void newton_structured_scalar(const StructuredPolys& polys, const NewtonParams& params, PointsMut z,
                              std::span<std::uint8_t> converged) {
    const double b_r = polys.b.real(), b_i = polys.b.imag();
    const double kd = static_cast<double>(polys.k);
    auto jet = [&](double zr, double zi, double& hr, double& hi, double& ar, double& ai, double& br,
                   double& bi) {
        double sr, si, dsr, dsi, ur, ui, dur, dui;
        horner(polys.S, zr, zi, sr, si);
        horner(polys.dS, zr, zi, dsr, dsi);
        horner(polys.U, zr, zi, ur, ui);
        horner(polys.dU, zr, zi, dur, dui);
        const double wr = zr - b_r, wi = zi - b_i;
        double pr = 1.0, pim = 0.0;  // w^{k-1}
        for (int j = 1; j < polys.k; ++j) {
            const double nr = pr * wr - pim * wi;
            const double ni = pr * wi + pim * wr;
            pr = nr;
            pim = ni;
        }
        const double wkr = pr * wr - pim * wi;  // w^k
        const double wki = pr * wi + pim * wr;
        const double ti = wkr * ui + wki * ur;  // Im T
        const double ar1 = kd * (pr * ur - pim * ui);  // k w^{k-1} U
        const double ai1 = kd * (pr * ui + pim * ur);
        const double dtr = ar1 + (wkr * dur - wki * dui);  // T'
        const double dti = ai1 + (wkr * dui + wki * dur);
        (void)si;
        hr = 2.0 * sr;
        hi = 2.0 * ti;
        ar = 2.0 * dsr;
        ai = 2.0 * dsi;
        br = 2.0 * dtr;
        bi = 2.0 * dti;
    };
    newton_loop(jet, params, z, converged);
}

void winding_numbers_scalar(PointsView poly, PointsView q, std::span<int> out) {
    const std::size_t n = poly.re.size();
    for (std::size_t i = 0; i < q.re.size(); ++i) {
        const double px = q.re[i], py = q.im[i];
        double w = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            const std::size_t f = e + 1 == n ? 0 : e + 1;
            const double x0 = poly.re[e], y0 = poly.im[e];
            const double x1 = poly.re[f], y1 = poly.im[f];
            const double left = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0);
            if (y0 <= py) {
                if (y1 > py && left > 0.0) w = w + 1.0;
            } else {
                if (y1 <= py && left < 0.0) w = w - 1.0;
            }
        }
        out[i] = static_cast<int>(w);
    }
}

}  // namespace harmlab::simd::detail
