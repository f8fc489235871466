#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "harmlab/error.hpp"
#include "harmlab/hroots.hpp"
#include "harmlab/presets.hpp"

using namespace harmlab;

namespace {

// Cells of a res x res grid over [-R, R]^2 where both Re h and Im h change
// sign among the corners.
std::vector<cplx> sign_change_cells(const HarmonicPoly& h, double R, int res, double& diag) {
    const double step = 2.0 * R / res;
    diag = step * std::sqrt(2.0);
    std::vector<cplx> row(static_cast<std::size_t>(res) + 1), next(row.size());
    const auto fill = [&](std::vector<cplx>& r, int j) {
        for (int i = 0; i <= res; ++i) r[static_cast<std::size_t>(i)] = eval_h(h, {-R + i * step, -R + j * step});
    };
    const auto changes = [](double a, double b, double c, double d) {
        const double lo = std::min({a, b, c, d}), hi = std::max({a, b, c, d});
        return lo <= 0.0 && hi >= 0.0;
    };
    std::vector<cplx> cells;
    fill(row, 0);
    for (int j = 0; j < res; ++j) {
        fill(next, j + 1);
        for (int i = 0; i < res; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const cplx a = row[k], b = row[k + 1], c = next[k], d = next[k + 1];
            if (changes(a.real(), b.real(), c.real(), d.real()) && changes(a.imag(), b.imag(), c.imag(), d.imag()))
                cells.emplace_back(-R + (i + 0.5) * step, -R + (j + 0.5) * step);
        }
        row.swap(next);
    }
    return cells;
}

double nearest(const std::vector<cplx>& pts, cplx z) {
    double best = INFINITY;
    for (const cplx w : pts) best = std::min(best, std::abs(w - z));
    return best;
}

}  // namespace

TEST_CASE("eval_h") {
    // z^2 + z + conj(z) = z^2 + 2 Re z; deg p > deg q rules out (z, z) itself.
    CHECK(eval_h(HarmonicPoly({0.0, 1.0, 1.0}, {0.0, 1.0}), cplx(1, 1)) == cplx(2.0, 2.0));
    CHECK_THROWS_AS(HarmonicPoly({0.0, 1.0}, {0.0, 1.0}), Error);
    CHECK(eval_h(HarmonicPoly({0.0, 0.0, 1.0}, {}), cplx(0, 1)) == cplx(-1.0));
}

TEST_CASE("orientation_at on h = (z^2, z)") {
    const HarmonicPoly h({0.0, 0.0, 1.0}, {0.0, 1.0});
    CHECK(orientation_at(h, 1.0) == Orientation::Preserving);
    CHECK(orientation_at(h, 0.0) == Orientation::Reversing);
    CHECK(orientation_at(h, 0.5) == Orientation::Singular);
}

TEST_CASE("winding numbers") {
    const ClosedCurve unit = circle_curve(0.0, 1.0);
    CHECK(winding_number([](cplx z) { return z; }, unit) == 1);
    CHECK(winding_number([](cplx z) { return std::conj(z); }, unit) == -1);
    const HarmonicPoly h = petals_polynomial(0.0);
    CHECK(winding_number([&](cplx z) { return eval_h(h, z); }, circle_curve(0.0, 3.0)) == 4);
    CHECK(winding_number(DenseModel(h), circle_curve(0.0, 3.0)) == 4);
    CHECK_THROWS_AS(winding_number([](cplx z) { return z - 1.0; }, unit), Error);
}

TEST_CASE("single analytic root") {
    const RootSet rs = find_all_zeros(HarmonicPoly({0.0, 1.0}, {}));
    REQUIRE(rs.size() == 1);
    CHECK(std::abs(rs.roots[0].location) < 1e-12);
    CHECK(rs.n_plus == 1);
    CHECK(rs.n_minus == 0);
    CHECK(rs.certified);
}

TEST_CASE("figure 1 polynomial: residuals, windings and orientation balance") {
    const HarmonicPoly h = figure1_polynomial();
    const RootSet rs = find_all_zeros(h);
    REQUIRE(rs.certified);
    CHECK(rs.n_plus - rs.n_minus == 4);
    CHECK(static_cast<int>(rs.size()) <= 3 * 4 - 2);
    for (const Root& r : rs.roots) {
        CHECK(std::abs(eval_h(h, r.location)) <= 1e-6);
        CHECK(r.winding == (r.orientation == Orientation::Preserving ? 1 : -1));
    }
}

TEST_CASE("enclosure radius is no larger than the closed form and encloses the zeros") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const HarmonicPoly h = random_complex_instance(3 + t % 4, 1 + t % 2, rng());
        const double R = enclosure_radius(h);
        CHECK(R <= crude_enclosure_radius(h));
        for (const Root& r : find_all_zeros(h).roots) CHECK(std::abs(r.location) < R);
    }
}

TEST_CASE("orientation balance and the n^2 and 3n - 2 bounds on random instances") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const int n = 2 + static_cast<int>(seed % 6);
        const int m = static_cast<int>((seed / 6) % static_cast<std::uint64_t>(n));
        const HarmonicPoly h = random_complex_instance(n, m, seed);
        const RootSet rs = find_all_zeros(h);
        if (!rs.certified) continue;
        ++checked;
        CHECK(rs.n_plus - rs.n_minus == n);
        CHECK(static_cast<int>(rs.size()) <= n * n);
        if (m == 1) CHECK(static_cast<int>(rs.size()) <= 3 * n - 2);
    }
    CHECK(checked >= 100);
}

TEST_CASE("grid sign-change oracle agrees with the reported zeros") {
    for (std::uint64_t seed : {3u, 8u, 19u}) {
        const HarmonicPoly h = random_complex_instance(4, 2, seed);
        const RootSet rs = find_all_zeros(h);
        REQUIRE(rs.certified);
        std::vector<cplx> roots;
        for (const Root& r : rs.roots) roots.push_back(r.location);
        double diag = 0.0;
        const auto cells = sign_change_cells(h, enclosure_radius(h), 600, diag);
        for (const cplx c : cells) CHECK(nearest(roots, c) <= 2.0 * diag);
        for (const cplx z : roots) CHECK(nearest(cells, z) <= 2.0 * diag);
    }
}

TEST_CASE("off_axes_count") {
    RootSet rs;
    rs.roots.push_back({.location = cplx(1.0, 1.0)});
    CHECK(off_axes_count(rs) == 1);
    rs.roots.push_back({.location = cplx(0.0, 0.0)});
    rs.roots.push_back({.location = cplx(2.0, 0.0)});
    CHECK(off_axes_count(rs) == 1);
}

TEST_CASE("the Wilmshurst polynomial has a singular zero at 0") {
    const HarmonicPoly h(CPoly::monomial(3) + CPoly::linear_power(1.0, 3), CPoly::monomial(3) - CPoly::linear_power(1.0, 3));
    const RootSet rs = find_all_zeros(h);
    CHECK_FALSE(rs.certified);
    CHECK(rs.singular_detected);
    CHECK_THROWS_AS(require_regular(rs), Error);
    for (const Root& r : rs.roots)
        if (std::abs(r.location) < 1e-6) CHECK(r.orientation == Orientation::Singular);
}

TEST_CASE("perturbing the co-analytic part keeps every zero") {
    SUBCASE("figure 1 polynomial to m = 2") {
        const HarmonicPoly h = figure1_polynomial();
        const RootSet rs = find_all_zeros(h);
        REQUIRE(rs.certified);
        const Perturbation pert = perturb_antianalytic(h, rs, 2);
        CHECK(pert.delta > 0.0);
        CHECK(pert.h.m() == 2);
        const RootSet after = find_all_zeros(pert.h);
        CHECK(after.certified);
        CHECK(after.size() >= rs.size());
    }
    SUBCASE("h = (z^3, z)") {
        // m_new must stay below n, so (z^2, z) has no admissible target degree.
        const HarmonicPoly h({0.0, 0.0, 0.0, 1.0}, {0.0, 1.0});
        const RootSet rs = find_all_zeros(h);
        REQUIRE(rs.certified);
        CHECK_THROWS_AS(perturb_antianalytic(HarmonicPoly({0.0, 0.0, 1.0}, {0.0, 1.0}), rs, 2), Error);
        const Perturbation pert = perturb_antianalytic(h, rs, 2);
        CHECK(pert.delta > 0.0);
        CHECK(find_all_zeros(pert.h).size() >= rs.size());
    }
}

TEST_CASE("exclusion sweep proves completeness on a small instance") {
    const HarmonicPoly h = random_complex_instance(3, 1, 77);
    const ExclusionResult ex = exclusion_sweep(h, enclosure_radius(h), 2'000'000);
    CHECK(ex.complete);
    CHECK(ex.disks.size() == find_all_zeros(h).size());
}
