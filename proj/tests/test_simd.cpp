#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "harmlab/simd.hpp"

using namespace harmlab;
using namespace harmlab::simd;

// Scalar and AVX2 kernels must agree bit for bit.

namespace {

struct Cloud {
    std::vector<double> re, im;
    PointsView view() const { return {re, im}; }
};

Cloud random_cloud(std::size_t n, double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    Cloud c;
    for (std::size_t i = 0; i < n; ++i) {
        c.re.push_back(u(rng));
        c.im.push_back(u(rng));
    }
    return c;
}

std::vector<cplx> random_coeffs(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c;
    for (int k = 0; k <= n; ++k) c.emplace_back(u(rng), u(rng));
    return c;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<cplx> derivative_of(const std::vector<cplx>& c) {
    std::vector<cplx> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

}  // namespace

TEST_CASE("eval_poly scalar and avx2 are bit-identical") {
    if (!isa_available(Isa::Avx2)) return;
    // 37 points exercise the tail after the last full vector.
    const Cloud z = random_cloud(37, 2.0, 1);
    const auto p = random_coeffs(9, 2);
    std::vector<double> sr(37), si(37), vr(37), vi(37);
    detail::eval_poly_scalar(p, z.view(), {sr, si});
    detail::eval_poly_avx2(p, z.view(), {vr, vi});
    CHECK(same_bits(sr, vr));
    CHECK(same_bits(si, vi));
    detail::eval_harmonic_scalar(p, random_coeffs(4, 3), z.view(), {sr, si});
    detail::eval_harmonic_avx2(p, random_coeffs(4, 3), z.view(), {vr, vi});
    CHECK(same_bits(sr, vr));
    CHECK(same_bits(si, vi));
}

TEST_CASE("newton kernels scalar and avx2 are bit-identical") {
    if (!isa_available(Isa::Avx2)) return;
    const auto p = random_coeffs(6, 11), q = random_coeffs(3, 12);
    std::vector<cplx> A(p), B(p);
    for (std::size_t k = 0; k < q.size(); ++k) {
        A[k] += q[k];
        B[k] -= q[k];
    }
    const auto dA = derivative_of(A), dB = derivative_of(B);
    const NewtonPolys polys{A, dA, B, dB};
    const Cloud start = random_cloud(53, 2.0, 13);
    Cloud s = start, v = start;
    std::vector<std::uint8_t> cs(53), cv(53);
    detail::newton_harmonic_scalar(polys, {}, {s.re, s.im}, cs);
    detail::newton_harmonic_avx2(polys, {}, {v.re, v.im}, cv);
    CHECK(same_bits(s.re, v.re));
    CHECK(same_bits(s.im, v.im));
    CHECK(cs == cv);

    const auto S = random_coeffs(5, 21), U = random_coeffs(2, 22);
    const auto dS = derivative_of(S), dU = derivative_of(U);
    const StructuredPolys sp{S, dS, U, dU, cplx(1.1, -0.1), 3};
    s = start;
    v = start;
    detail::newton_structured_scalar(sp, {}, {s.re, s.im}, cs);
    detail::newton_structured_avx2(sp, {}, {v.re, v.im}, cv);
    CHECK(same_bits(s.re, v.re));
    CHECK(same_bits(s.im, v.im));
    CHECK(cs == cv);
}

TEST_CASE("winding kernels agree and count a square correctly") {
    const Cloud square{{-1.0, 1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0, 1.0}};
    const Cloud q = random_cloud(101, 2.0, 31);
    std::vector<int> ws(101), wv(101);
    detail::winding_numbers_scalar(square.view(), q.view(), ws);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const bool inside = std::abs(q.re[i]) < 1.0 && std::abs(q.im[i]) < 1.0;
        CHECK(ws[i] == (inside ? 1 : 0));
    }
    if (!isa_available(Isa::Avx2)) return;
    detail::winding_numbers_avx2(square.view(), q.view(), wv);
    CHECK(ws == wv);
}

TEST_CASE("dispatcher can be forced to the scalar path") {
    force_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    const Cloud z = random_cloud(9, 1.0, 41);
    std::vector<double> r(9), i(9);
    eval_poly(random_coeffs(3, 42), z.view(), {r, i});
    reset_isa();
    std::vector<double> r2(9), i2(9);
    eval_poly(random_coeffs(3, 42), z.view(), {r2, i2});
    CHECK(same_bits(r, r2));
    CHECK(same_bits(i, i2));
}
