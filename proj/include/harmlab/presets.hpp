#pragma once

#include <cstdint>

#include "harmlab/construct.hpp"
#include "harmlab/hroots.hpp"

namespace harmlab {

// Quartic with m = 1 whose top sense-reversing component holds two zeros of h
// and one zero of f. q is multiplied by q_scale.
HarmonicPoly figure1_polynomial(double q_scale = 1.0);

// At the printed five-digit coefficients two saddles of f sit at
// |f| = 1 - 5e-6, which merges the top component with its neighbours. This
// scale lifts them just above 1 and separates it without moving any zero.
inline constexpr double kFigure1Separation = 1.0 - 1e-5;

// z^4 / 4 - z - e^{i theta} conj(z): three petals meeting at the critical
// point 0 of f.
HarmonicPoly petals_polynomial(double theta);

ConstructionParams figure3_left();   // n = 4, m = 2: 12 zeros
ConstructionParams figure3_right();  // n = 5, m = 2: 15 zeros

// p' a random monic polynomial of degree 2..4 with roots in the unit disk,
// q = c z with |c| drawn between the critical values of |p'|, so that
// components of Omega hold varying numbers of zeros of f.
HarmonicPoly random_m1_instance(std::uint64_t seed);

// The Figure 1 polynomial with every coefficient of p moved by up to
// `spread` relative, and q = c z scaled by a random factor in [0.8, 1.25].
HarmonicPoly perturbed_quartic(std::uint64_t seed, double spread = 0.3);

// Degree-n p and degree-(n-1) q with real coefficients uniform in [-1, 1].
HarmonicPoly random_real_instance(int n, std::uint64_t seed);

// Degree-n p and degree-m q with complex coefficients, real and imaginary
// parts uniform in [-1, 1].
HarmonicPoly random_complex_instance(int n, int m, std::uint64_t seed);

}  // namespace harmlab
