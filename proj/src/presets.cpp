#include "harmlab/presets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace harmlab {

namespace {

CPoly integrate(const CPoly& d) {
    std::vector<cplx> c(d.coeffs().size() + 1);
    for (std::size_t k = 0; k < d.coeffs().size(); ++k) c[k + 1] = d.coeffs()[k] / static_cast<double>(k + 1);
    return CPoly(c);
}

}  // namespace

HarmonicPoly figure1_polynomial(double q_scale) {
    const CPoly p{cplx(0.247627, 0.020994), cplx(-1.06429, 0.395504), cplx(-0.116325, -0.313028),
                  cplx(0.354765, -0.131835), cplx(0.0581623, 0.156514)};
    // The printed term -(a + bi) conj(z) is conj(q) for q = -(a - bi) z.
    const cplx c = q_scale * cplx(-0.934124, 0.356949);
    return HarmonicPoly(p, CPoly{0.0, c});
}

HarmonicPoly petals_polynomial(double theta) {
    return HarmonicPoly(CPoly{0.0, -1.0, 0.0, 0.0, 0.25}, CPoly{0.0, -std::polar(1.0, -theta)});
}

ConstructionParams figure3_left() { return {4, 2, cplx(0.0, 0.0), cplx(1.1, -0.1)}; }

ConstructionParams figure3_right() { return {5, 2, cplx(1.5, -0.5), cplx(-0.05, 0.92)}; }

HarmonicPoly random_m1_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int d = 2 + static_cast<int>(rng() % 3);
    std::vector<cplx> roots;
    for (int k = 0; k < d; ++k) roots.push_back(std::polar(std::sqrt(unit(rng)), 2.0 * 3.141592653589793 * unit(rng)));
    const CPoly dp = CPoly::from_roots(roots);
    std::vector<double> levels;
    for (const cplx c : all_roots(derivative(dp))) levels.push_back(std::abs(eval(dp, c)));
    std::sort(levels.begin(), levels.end());
    // A level strictly inside a random gap between critical values.
    std::vector<double> cuts{0.25 * levels.front()};
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) cuts.push_back(std::sqrt(levels[k] * levels[k + 1]));
    cuts.push_back(2.0 * levels.back());
    double level = cuts[static_cast<std::size_t>(rng() % cuts.size())];
    for (const double v : levels)
        if (std::abs(level - v) < 0.05 * v) level = 0.9 * v;
    const cplx c = std::polar(level, 2.0 * 3.141592653589793 * unit(rng));
    return HarmonicPoly(integrate(dp), CPoly{0.0, c});
}

HarmonicPoly perturbed_quartic(std::uint64_t seed, double spread) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const HarmonicPoly base = figure1_polynomial();
    std::vector<cplx> c = base.p().coeffs();
    for (cplx& a : c) a *= 1.0 + spread * cplx(u(rng), u(rng));
    const double s = std::exp(std::log(1.25) * u(rng));
    return HarmonicPoly(CPoly(c), s * base.q());
}

HarmonicPoly random_real_instance(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> p(static_cast<std::size_t>(n) + 1), q(static_cast<std::size_t>(n));
    for (cplx& c : p) c = u(rng);
    for (cplx& c : q) c = u(rng);
    return HarmonicPoly(CPoly(p), CPoly(q));
}

HarmonicPoly random_complex_instance(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> p(static_cast<std::size_t>(n) + 1), q(static_cast<std::size_t>(m) + 1);
    for (cplx& c : p) c = {u(rng), u(rng)};
    for (cplx& c : q) c = {u(rng), u(rng)};
    return HarmonicPoly(CPoly(p), CPoly(q));
}

}  // namespace harmlab
