#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "harmlab/error.hpp"
#include "harmlab/lemniscate.hpp"
#include "harmlab/presets.hpp"

using namespace harmlab;
using std::numbers::pi;

namespace {

RationalFn poly_over_one(CPoly num) { return RationalFn(std::move(num), CPoly{1.0}); }

const RationalFn kCubic = poly_over_one(CPoly{-1.0, 0.0, 0.0, 1.0});

void check_on_curve(const RationalFn& f, const OmegaDecomposition& om) {
    for (const CurveComponent& C : om.components)
        for (const LemniscateSample& s : C.samples) CHECK(std::abs(std::abs(f(s.z)) - 1.0) <= 1e-8);
}

double wrap(double a) { return std::remainder(a, 2.0 * pi); }

}  // namespace

TEST_CASE("unit circle for f = z") {
    const RationalFn f = poly_over_one(CPoly{0.0, 1.0});
    const OmegaDecomposition om = trace_lemniscate(f);
    REQUIRE(om.components.size() == 1);
    const CurveComponent& C = om.components[0];
    CHECK(C.zero_count == 1);
    CHECK(om.total_zero_count == 1);
    CHECK(zeros_inside(f, C) == 1);
    CHECK(C.signed_area() == doctest::Approx(pi).epsilon(1e-3));
    for (const LemniscateSample& s : C.samples) CHECK(std::abs(std::abs(s.z) - 1.0) < 1e-8);
}

TEST_CASE("three petals of z^3 - 1 meet at the origin") {
    const OmegaDecomposition om = trace_lemniscate(kCubic);
    check_on_curve(kCubic, om);
    REQUIRE(om.components.size() == 3);
    CHECK(om.total_zero_count == 3);
    for (const CurveComponent& C : om.components) {
        CHECK(C.zero_count == 1);
        CHECK(zeros_inside(kCubic, C) == 1);
        CHECK(C.signed_area() > 0.0);
        CHECK(C.theta_end() - C.theta_start == doctest::Approx(2.0 * pi));
    }
    REQUIRE(om.critical_points.size() == 1);
    CHECK(std::abs(om.critical_points[0].z) < 1e-9);
    CHECK(om.critical_points[0].order == 3);
}

TEST_CASE("two critical points merge into one component") {
    // |c (z - 0.1)(z + 0.1)| = 1 with c chosen so the saddle at 0 is inside.
    const RationalFn f = poly_over_one(10.0 * CPoly{-0.01, 0.0, 1.0});
    const OmegaDecomposition om = trace_lemniscate(f);
    check_on_curve(f, om);
    REQUIRE(om.components.size() == 1);
    CHECK(om.components[0].zero_count == 2);
    CHECK(zeros_inside(f, om.components[0]) == 2);
}

TEST_CASE("component bookkeeping on random m = 1 instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const HarmonicPoly h = random_m1_instance(seed);
        const RationalFn f = h.f();
        const OmegaDecomposition om = trace_lemniscate(f);
        check_on_curve(f, om);
        CHECK(static_cast<int>(om.components.size()) <= h.n() - 1);
        CHECK(om.total_zero_count <= h.n() - 1);
        int inside = 0;
        for (const cplx z : all_roots(h.dp())) inside += std::abs(f(z)) < 1.0 ? 1 : 0;
        CHECK(om.total_zero_count == inside);
        int sum = 0;
        for (const CurveComponent& C : om.components) sum += C.hole ? 0 : C.zero_count;
        CHECK(sum == inside);
    }
}

TEST_CASE("figure 1 top component") {
    SUBCASE("printed coefficients merge three components") {
        const OmegaDecomposition om = trace_lemniscate(figure1_polynomial().f());
        REQUIRE(om.components.size() == 1);
        CHECK(om.components[0].zero_count == 3);
    }
    SUBCASE("separated variant") {
        const HarmonicPoly h = figure1_polynomial(kFigure1Separation);
        const OmegaDecomposition om = trace_lemniscate(h.f());
        REQUIRE(om.components.size() == 3);
        const auto top = std::max_element(om.components.begin(), om.components.end(), [](const auto& a, const auto& b) {
            return a.polyline()[0].imag() < b.polyline()[0].imag();
        });
        CHECK(top->zero_count == 1);
        const CurveComponent hp = harmonic_parametrization(h.f(), *top, 2048);
        CHECK(min_curvature_ratio(curvature_ratio(h, hp)) < -0.5);
    }
}

TEST_CASE("harmonic parametrization advances arg f uniformly") {
    SUBCASE("f = z gives uniform angles") {
        const RationalFn f = poly_over_one(CPoly{0.0, 1.0});
        const CurveComponent hp = harmonic_parametrization(f, trace_lemniscate(f).components[0], 64);
        REQUIRE(hp.samples.size() == 64);
        for (std::size_t j = 1; j < 64; ++j)
            CHECK(wrap(std::arg(hp.samples[j].z) - std::arg(hp.samples[j - 1].z)) == doctest::Approx(2 * pi / 64));
    }
    SUBCASE("f = z^2 runs over two turns") {
        const RationalFn f = poly_over_one(CPoly{0.0, 0.0, 1.0});
        const OmegaDecomposition om = trace_lemniscate(f);
        REQUIRE(om.components.size() == 1);
        const CurveComponent hp = harmonic_parametrization(f, om.components[0], 128);
        CHECK(hp.zero_count == 2);
        CHECK(hp.samples.size() == 256);
        CHECK(hp.theta_end() - hp.theta_start == doctest::Approx(4.0 * pi));
    }
    SUBCASE("petal") {
        const CurveComponent hp = harmonic_parametrization(kCubic, trace_lemniscate(kCubic).components[0], 256);
        const double dt = 2.0 * pi / 256;
        for (std::size_t j = 1; j < hp.samples.size(); ++j) {
            const double d = std::arg(kCubic(hp.samples[j].z) / kCubic(hp.samples[j - 1].z));
            CHECK(std::abs(d / dt - 1.0) <= 1e-6);
        }
    }
}

TEST_CASE("tangent_v") {
    const RationalFn f = poly_over_one(CPoly{0.0, 1.0});
    CHECK(std::abs(tangent_v(f, 1.0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(tangent_v(f, cplx(0.0, 1.0)) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(tangent_v(f, 0.5), Error);
    CHECK_THROWS_AS(tangent_v(kCubic, 0.0), Error);
}

TEST_CASE("tangent_v follows the traced polyline away from the saddle") {
    const OmegaDecomposition om = trace_lemniscate(kCubic);
    const CurveComponent& C = om.components[0];
    int checked = 0;
    for (std::size_t j = 1; j + 1 < C.samples.size(); ++j) {
        const cplx z = C.samples[j].z;
        if (std::abs(z) < 0.2) continue;
        const cplx chord = C.samples[j + 1].z - C.samples[j - 1].z;
        if (std::abs(chord) > 0.02) continue;
        CHECK(std::abs(std::arg(chord / tangent_v(kCubic, z))) < 1e-3);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("curvature ratio oracles") {
    SUBCASE("unit circle with q = z is identically 1") {
        const HarmonicPoly h({0.0, 0.0, 0.5}, {0.0, 1.0});
        const CurveComponent hp = harmonic_parametrization(h.f(), trace_lemniscate(h.f()).components[0], 256);
        for (const double r : curvature_ratio(h, hp)) CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(curvature_ratio_at(h, cplx(0.6, 0.8)) == doctest::Approx(1.0));
    }
    SUBCASE("a convex disk has nonnegative ratio") {
        // p' = (z - 5) / 5: the circle |z - 5| = 5.
        const HarmonicPoly h({2.5, -1.0, 0.1}, {0.0, 1.0});
        const CurveComponent hp = harmonic_parametrization(h.f(), trace_lemniscate(h.f()).components[0], 256);
        for (const double r : curvature_ratio(h, hp)) CHECK(r >= 0.0);
    }
    SUBCASE("finite differences match the closed form on resolved components") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const HarmonicPoly h = random_m1_instance(seed);
            for (const CurveComponent& C : trace_lemniscate(h.f()).components) {
                if (!C.critical_points.empty()) continue;
                const CurveComponent hp = harmonic_parametrization(h.f(), C, 2048);
                const auto fd = curvature_ratio(h, hp);
                for (std::size_t j = 0; j < fd.size(); ++j) {
                    const double exact = curvature_ratio_at(h, hp.samples[j].z);
                    if (std::isfinite(fd[j]) && std::abs(exact) < 50.0)
                        CHECK(std::abs(fd[j] - exact) <= 2e-3 * (1.0 + std::abs(exact)));
                }
            }
        }
    }
}

TEST_CASE("wedge structure") {
    SUBCASE("z^3 - 1 at 0: six rays") {
        const WedgeStructure w = wedge_structure(kCubic, 0.0);
        CHECK(w.k == 3);
        REQUIRE(w.angles.size() == 6);
        for (std::size_t j = 1; j < 6; ++j) CHECK(w.angles[j] - w.angles[j - 1] == doctest::Approx(pi / 3));
        CHECK(w.angles.back() - w.angles.front() < 2.0 * pi);
    }
    SUBCASE("z^2 + 1 at 0: perpendicular crossing") {
        const WedgeStructure w = wedge_structure(poly_over_one(CPoly{1.0, 0.0, 1.0}), 0.0);
        CHECK(w.k == 2);
        REQUIRE(w.angles.size() == 4);
        for (std::size_t j = 1; j < 4; ++j) CHECK(w.angles[j] - w.angles[j - 1] == doctest::Approx(pi / 2));
    }
    SUBCASE("traced petal directions match the rays") {
        const WedgeStructure w = wedge_structure(kCubic, 0.0);
        for (const CurveComponent& C : trace_lemniscate(kCubic).components)
            for (const LemniscateSample& s : C.samples) {
                const double r = std::abs(s.z);
                if (r < 1e-3 || r > 2e-2) continue;
                double best = INFINITY;
                for (const double a : w.angles) best = std::min(best, std::abs(wrap(std::arg(s.z) - a)));
                CHECK(best < 1e-2);
            }
    }
    SUBCASE("errors") {
        const RationalFn f = poly_over_one(CPoly{0.0, 1.0});
        CHECK_THROWS_AS(wedge_structure(f, 0.5), Error);
        CHECK_THROWS_AS(wedge_structure(f, 1.0), Error);
    }
}
