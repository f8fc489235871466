#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "harmlab/cpoly.hpp"
#include "harmlab/error.hpp"

using namespace harmlab;

namespace {

cplx random_in_disk(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z) <= 1.0) return z;
    }
}

}  // namespace

TEST_CASE("eval matches hand values") {
    CHECK(std::abs(eval(CPoly{-1.0, 0.0, 1.0}, 1.0)) == 0.0);
    CHECK(eval(CPoly{0.0, 1.0}, cplx(3, 4)) == cplx(3, 4));
    CHECK(eval(CPoly{0.0, -1.0, 0.0, 0.0, 0.25}, 1.0) == cplx(-0.75));
}

TEST_CASE("zero polynomial and trimming") {
    CHECK(CPoly{}.is_zero());
    CHECK(CPoly{}.degree() == CPoly::kZeroDegree);
    CHECK(CPoly{1.0, 2.0, 0.0, 0.0}.degree() == 1);
    CHECK(derivative(CPoly::constant(5.0)).is_zero());
}

TEST_CASE("derivative") {
    const CPoly d = derivative(CPoly{0.0, 0.0, 1.0});
    REQUIRE(d.degree() == 1);
    CHECK(d[1] == cplx(2.0));
    // z^4/4 - z differentiates to z^3 - 1.
    const CPoly p3 = derivative(CPoly{0.0, -1.0, 0.0, 0.0, 0.25});
    CHECK(p3.degree() == 3);
    CHECK(p3[0] == cplx(-1.0));
    CHECK(p3[3] == cplx(1.0));
}

TEST_CASE("derivative agrees with central differences") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> c(6);
        for (cplx& a : c) a = random_in_disk(rng);
        const CPoly p(c);
        const cplx z = 3.0 * random_in_disk(rng);
        const double h = 1e-5;
        const cplx fd = (eval(p, z + h) - eval(p, z - h)) / (2.0 * h);
        const cplx d = eval(derivative(p), z);
        CHECK(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
    }
}

TEST_CASE("all_roots on factored inputs") {
    auto r = all_roots(CPoly{-1.0, 0.0, 0.0, 1.0});
    REQUIRE(r.size() == 3);
    for (const cplx z : r) CHECK(std::abs(z * z * z - 1.0) < 1e-12);

    const cplx twice[] = {1.0, 1.0, -2.0};
    r = all_roots(CPoly::from_roots(twice));
    const auto clusters = cluster_roots(r);
    REQUIRE(clusters.size() == 2);
    for (const RootCluster& c : clusters) {
        if (c.multiplicity == 2) CHECK(std::abs(c.center - 1.0) < 1e-7);
        else CHECK(std::abs(c.center + 2.0) < 1e-12);
    }
}

TEST_CASE("roots of the derivative of z^5 + (z-1)^5 lie on Re z = 1/2") {
    const CPoly p = CPoly::monomial(5) + CPoly::linear_power(1.0, 5);
    const auto r = all_roots(derivative(p));
    REQUIRE(r.size() == 4);
    for (const cplx z : r) CHECK(std::abs(z.real() - 0.5) < 1e-10);
}

TEST_CASE("cauchy_bound") {
    CHECK(cauchy_bound(CPoly{-1.0, 0.0, 1.0}) == 2.0);
    CHECK(cauchy_bound(CPoly::monomial(3)) == 1.0);
    CHECK(cauchy_bound(CPoly{-8.0, 0.0, 2.0}) == 5.0);
}

TEST_CASE("random roots rebuild the monic polynomial and respect the Cauchy bound") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = deg(rng);
        std::vector<cplx> c(static_cast<std::size_t>(d) + 1);
        for (cplx& a : c) a = random_in_disk(rng);
        if (std::abs(c.back()) < 0.05) c.back() = 0.5;
        const CPoly p(c);
        const auto r = all_roots(p);
        REQUIRE(static_cast<int>(r.size()) == d);
        const double bound = cauchy_bound(p);
        for (const cplx z : r) CHECK(std::abs(z) < bound);
        const CPoly rebuilt = CPoly::from_roots(r);
        for (int k = 0; k <= d; ++k) CHECK(std::abs(rebuilt[k] - p[k] / p.leading()) <= 1e-8 * (1.0 + std::abs(p[k] / p.leading())));
    }
}

TEST_CASE("rational function keeps common roots") {
    const RationalFn f(CPoly{-1.0, 0.0, 1.0}, CPoly{-1.0, 1.0});
    const auto common = f.common_roots();
    REQUIRE(common.size() == 1);
    CHECK(std::abs(common[0] - 1.0) < 1e-9);
    CHECK(f.numerator().degree() == 2);
}

TEST_CASE("taylor coefficients of a rational function") {
    const RationalFn f(CPoly{1.0, 0.0, 1.0}, CPoly{1.0});
    const auto t = f.taylor(0.0, 3);
    CHECK(std::abs(t[0] - 1.0) < 1e-15);
    CHECK(std::abs(t[1]) < 1e-15);
    CHECK(std::abs(t[2] - 1.0) < 1e-15);
    CHECK(std::abs(t[3]) < 1e-15);
}
