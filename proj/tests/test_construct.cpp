#include <cmath>
#include <random>

#include "doctest.h"
#include "harmlab/construct.hpp"
#include "harmlab/presets.hpp"

using namespace harmlab;

TEST_CASE("build_S") {
    const CPoly s4 = build_S(4, 0.0);
    CHECK(s4.degree() == 4);
    for (int k = 0; k < 4; ++k) CHECK(s4[k] == cplx(0.0));

    const CPoly s2 = build_S(2, 1.0);
    CHECK(s2[0] == cplx(-1.0));
    CHECK(s2[1] == cplx(0.0));
    CHECK(s2[2] == cplx(1.0));

    const cplx a(1.5, -0.5);
    const CPoly d = derivative(build_S(5, a));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const cplx z(u(rng), u(rng));
        const cplx want = 5.0 * std::pow(z - a, 3) * (z + 3.0 * a);
        CHECK(std::abs(eval(d, z) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("solve_T with no unknowns") {
    const cplx b(0.3, 0.4);
    const ConstructionResult c = solve_T({3, 2, 0.0, b});
    CHECK(c.t_coeffs.empty());
    const CPoly want = CPoly::linear_power(b, 3);
    for (int k = 0; k <= 3; ++k) CHECK(std::abs(c.T[k] - want[k]) < 1e-14);
}

TEST_CASE("S - T drops to degree m") {
    const ConstructionResult left = solve_T(figure3_left());
    CHECK(left.q.degree() <= 2);
    CHECK(left.p.degree() == 4);
    CHECK(left.degree_defect <= 1e-9);

    const ConstructionResult nine = solve_T({9, 7, 0.0, cplx(1.1, -0.1)});
    CHECK(nine.q.degree() <= 7);
    CHECK(nine.degree_defect <= 1e-9);
}

TEST_CASE("h = 2 Re S + 2i Im T pointwise") {
    for (const ConstructionParams& k : {figure3_left(), figure3_right()}) {
        const ConstructionResult c = solve_T(k);
        const HarmonicPoly h = c.harmonic();
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(-2.5, 2.5);
        for (int t = 0; t < 1000; ++t) {
            const cplx z(u(rng), u(rng));
            const cplx s = eval(c.S, z), tt = eval(c.T, z);
            const cplx want(2.0 * s.real(), 2.0 * tt.imag());
            CHECK(std::abs(eval_h(h, z) - want) <= 1e-9 * (1.0 + eval_h_scale(h, z)));
        }
    }
}

TEST_CASE("factored model agrees with the dense model away from b") {
    const ConstructionResult c = solve_T(figure3_right());
    const ConstructionModel fm(c);
    const DenseModel dm(c.harmonic());
    for (const cplx z : {cplx(2.0, 1.0), cplx(-1.0, 0.5), cplx(0.1, -1.7)}) {
        const HarmonicJet a = fm.jet(z), b = dm.jet(z);
        CHECK(std::abs(a.h - b.h) <= 1e-10 * (1.0 + a.scale));
        CHECK(std::abs(a.dp - b.dp) <= 1e-9 * (1.0 + std::abs(b.dp)));
        CHECK(std::abs(a.dq - b.dq) <= 1e-9 * (1.0 + std::abs(b.dq)));
    }
}

TEST_CASE("figure 3 root counts") {
    const ConstructionRoots left = count_construction_roots(figure3_left());
    REQUIRE(left.roots.certified);
    CHECK(left.roots.size() == 12);
    CHECK(left.on_both_curves);
    CHECK(left.roots.n_plus - left.roots.n_minus == 4);

    const ConstructionRoots right = count_construction_roots(figure3_right());
    REQUIRE(right.roots.certified);
    CHECK(right.roots.size() == 15);
    CHECK(right.on_both_curves);
    CHECK(right.roots.n_plus - right.roots.n_minus == 5);
}

TEST_CASE("lower bound m^2 + m + n for a = 0") {
    for (int n = 2; n <= 6; ++n)
        for (int m = 0; m < n; ++m) {
            const ConstructionRoots cr = count_construction_roots({n, m, 0.0, cplx(1.1, -0.1)});
            REQUIRE(cr.roots.certified);
            CHECK(static_cast<int>(cr.roots.size()) >= construction_lower_bound(n, m));
            CHECK(static_cast<int>(cr.roots.size()) <= n * n);
        }
}

TEST_CASE("excessive zeros start at n = 7") {
    const ScanTable t = conjecture_scan(8);
    REQUIRE(t.conclusive);
    REQUIRE(t.rows.size() == 5);
    for (const ScanRow& r : t.rows) {
        const int n = r.record.n;
        CHECK(r.record.m == n - 2);
        CHECK(r.record.total >= construction_lower_bound(n, n - 2));
        CHECK(r.record.total <= n * n);
        CHECK(r.wilmshurst_count == n * n - 2 * n + 4);
        CHECK(r.record.excessive == (n < 7 ? 0 : 4));
    }
    CHECK(t.jumps == std::vector<int>{7});
}

TEST_CASE("Wilmshurst instances are sharp for small n") {
    for (int n = 2; n <= 3; ++n) {
        const WilmshurstRun run = wilmshurst_sharpness(n);
        CHECK(run.sharp);
        CHECK(static_cast<int>(run.roots.size()) == n * n);
    }
}
