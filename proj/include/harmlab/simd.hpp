#pragma once

// Batched arithmetic kernels for the data-parallel inner loops: polynomial
// evaluation over point clouds, multistart Newton for harmonic polynomials,
// and winding numbers of a closed polyline around many query points.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The AVX2 code performs the same IEEE operations in the same order (no FMA
// contraction), so both paths return bit-identical results; the dispatcher
// picks AVX2 at runtime when the CPU supports it. HARMLAB_ISA=scalar in the
// environment forces the reference path.

#include <complex>
#include <cstdint>
#include <span>

namespace harmlab::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
// Overrides the dispatcher (tests use this to compare paths).
void force_isa(Isa isa);
void reset_isa() noexcept;

// Points are passed structure-of-arrays: re[i] + i*im[i].
struct PointsView {
    std::span<const double> re;
    std::span<const double> im;
};

struct PointsMut {
    std::span<double> re;
    std::span<double> im;
};

// out = P(z) for every point.
void eval_poly(std::span<const cplx> coeffs, PointsView z, PointsMut out);

// out = p(z) + conj(q(z)) for every point.
void eval_harmonic(std::span<const cplx> p, std::span<const cplx> q, PointsView z, PointsMut out);

// h = p + conj(q) in the form Re h = Re A, Im h = Im B with A = p + q and
// B = p - q; summing coefficients first keeps cancellation between p and q exact.
struct NewtonPolys {
    std::span<const cplx> A, dA, B, dB;
};

struct NewtonParams {
    int max_iter = 60;
    double step_cap = 1.0;  // max |dz| per iteration
    double tol = 1e-14;     // stop when |dz| <= tol * (1 + |z|)
};

// Runs Newton's method on (Re h, Im h) = 0 in place for each starting point.
// converged[i] is set to 1 when the stopping rule fired, 0 otherwise.
void newton_harmonic(const NewtonPolys& polys, const NewtonParams& params, PointsMut z,
                     std::span<std::uint8_t> converged);

// Factored construction h = 2 Re S + 2i Im T with T = (z - b)^k U(z); p = S + T
// and q = S - T. Evaluating T in factored form keeps it accurate near b.
struct StructuredPolys {
    std::span<const cplx> S, dS, U, dU;
    cplx b;
    int k = 1;
};

void newton_structured(const StructuredPolys& polys, const NewtonParams& params, PointsMut z,
                       std::span<std::uint8_t> converged);

// Winding number of the closed polyline (last vertex joins the first) around
// each query point. Points exactly on the curve get an arbitrary value.
void winding_numbers(PointsView polyline, PointsView queries, std::span<int> out);

namespace detail {
// Direct entry points, bypassing dispatch.
void eval_poly_scalar(std::span<const cplx>, PointsView, PointsMut);
void eval_harmonic_scalar(std::span<const cplx>, std::span<const cplx>, PointsView, PointsMut);
void newton_harmonic_scalar(const NewtonPolys&, const NewtonParams&, PointsMut, std::span<std::uint8_t>);
void newton_structured_scalar(const StructuredPolys&, const NewtonParams&, PointsMut, std::span<std::uint8_t>);
void winding_numbers_scalar(PointsView, PointsView, std::span<int>);

void eval_poly_avx2(std::span<const cplx>, PointsView, PointsMut);
void eval_harmonic_avx2(std::span<const cplx>, std::span<const cplx>, PointsView, PointsMut);
void newton_harmonic_avx2(const NewtonPolys&, const NewtonParams&, PointsMut, std::span<std::uint8_t>);
void newton_structured_avx2(const StructuredPolys&, const NewtonParams&, PointsMut, std::span<std::uint8_t>);
void winding_numbers_avx2(PointsView, PointsView, std::span<int>);
}  // namespace detail

}  // namespace harmlab::simd
