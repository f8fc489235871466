#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>

#include "harmlab/error.hpp"
#include "harmlab/simd.hpp"

namespace harmlab::simd {

namespace {

// -1: not yet resolved, otherwise static_cast<int>(Isa).
std::atomic<int> g_isa{-1};

Isa detect() noexcept {
    if (const char* env = std::getenv("HARMLAB_ISA"); env != nullptr && std::strcmp(env, "scalar") == 0)
        return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorKind::InvalidArgument, "simd kernel: mismatched array lengths");
}

}  // namespace

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) noexcept {
    if (isa == Isa::Scalar) return true;
#if defined(HARMLAB_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() noexcept {
    int v = g_isa.load(std::memory_order_relaxed);
    if (v < 0) {
        v = static_cast<int>(detect());
        g_isa.store(v, std::memory_order_relaxed);
    }
    return static_cast<Isa>(v);
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw Error(ErrorKind::InvalidArgument, "requested ISA not available");
    g_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept { g_isa.store(-1, std::memory_order_relaxed); }

void eval_poly(std::span<const cplx> coeffs, PointsView z, PointsMut out) {
    check_sizes(z.re.size(), z.im.size());
    check_sizes(z.re.size(), out.re.size());
    check_sizes(z.re.size(), out.im.size());
    if (active_isa() == Isa::Avx2) detail::eval_poly_avx2(coeffs, z, out);
    else detail::eval_poly_scalar(coeffs, z, out);
}

void eval_harmonic(std::span<const cplx> p, std::span<const cplx> q, PointsView z, PointsMut out) {
    check_sizes(z.re.size(), z.im.size());
    check_sizes(z.re.size(), out.re.size());
    check_sizes(z.re.size(), out.im.size());
    if (active_isa() == Isa::Avx2) detail::eval_harmonic_avx2(p, q, z, out);
    else detail::eval_harmonic_scalar(p, q, z, out);
}

void newton_harmonic(const NewtonPolys& polys, const NewtonParams& params, PointsMut z,
                     std::span<std::uint8_t> converged) {
    check_sizes(z.re.size(), z.im.size());
    check_sizes(z.re.size(), converged.size());
    if (active_isa() == Isa::Avx2) detail::newton_harmonic_avx2(polys, params, z, converged);
    else detail::newton_harmonic_scalar(polys, params, z, converged);
}

void newton_structured(const StructuredPolys& polys, const NewtonParams& params, PointsMut z,
                       std::span<std::uint8_t> converged) {
    check_sizes(z.re.size(), z.im.size());
    check_sizes(z.re.size(), converged.size());
    if (polys.k < 1) throw Error(ErrorKind::InvalidArgument, "newton_structured needs k >= 1");
    if (active_isa() == Isa::Avx2) detail::newton_structured_avx2(polys, params, z, converged);
    else detail::newton_structured_scalar(polys, params, z, converged);
}

void winding_numbers(PointsView polyline, PointsView queries, std::span<int> out) {
    check_sizes(polyline.re.size(), polyline.im.size());
    check_sizes(queries.re.size(), queries.im.size());
    check_sizes(queries.re.size(), out.size());
    if (polyline.re.empty()) {
        std::fill(out.begin(), out.end(), 0);
        return;
    }
    if (active_isa() == Isa::Avx2) detail::winding_numbers_avx2(polyline, queries, out);
    else detail::winding_numbers_scalar(polyline, queries, out);
}

}  // namespace harmlab::simd
