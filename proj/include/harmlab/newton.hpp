#pragma once

#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "harmlab/hroots.hpp"

namespace harmlab {

// Exponent pair (i, j) of the monomial x^i y^j.
struct LatticePoint {
    long i = 0;
    long j = 0;
    auto operator<=>(const LatticePoint&) const = default;
};

// Real polynomial in x, y. Terms with |c| <= 1e-12 * max|c| are not stored.
class RPoly2 {
public:
    static constexpr double kDropRelative = 1e-12;

    RPoly2() = default;
    explicit RPoly2(const std::map<LatticePoint, double>& terms);

    const std::map<LatticePoint, double>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    double coeff(long i, long j) const noexcept;
    std::vector<LatticePoint> support() const;
    double operator()(double x, double y) const noexcept;

private:
    std::map<LatticePoint, double> terms_;
};

// hull is counterclockwise, starting at the lexicographically smallest point,
// with no three consecutive vertices collinear. A point or a segment has one
// or two vertices.
struct LatticePolygon {
    std::vector<LatticePoint> support;
    std::vector<LatticePoint> hull;

    // Twice the area; an exact integer for lattice polygons.
    long twice_area() const noexcept;
    double area() const noexcept { return 0.5 * static_cast<double>(twice_area()); }
};

// Monotone chain. Throws EmptySupport for an empty point set.
LatticePolygon convex_hull(std::vector<LatticePoint> points);

// (A, B) with h(x + iy) = A(x, y) + i B(x, y).
std::pair<RPoly2, RPoly2> realify(const HarmonicPoly& h);

LatticePolygon newton_polygon(const RPoly2& P);

// Edge merge of the two boundaries by edge angle.
LatticePolygon minkowski_sum(const LatticePolygon& P, const LatticePolygon& Q);

// [P + Q] - [P] - [Q].
double mixed_area(const LatticePolygon& P, const LatticePolygon& Q);
double mixed_area(const RPoly2& P, const RPoly2& Q);

// Vertex sets of the Newton polygons of A and B for a generic real-coefficient
// h of degree n (triangle and trapezoid, swapped by the parity of n).
std::pair<std::vector<LatticePoint>, std::vector<LatticePoint>> predicted_vertices(int n);

struct GenericityReport {
    bool generic = true;
    std::vector<LatticePoint> vertices_a, vertices_b;  // observed, sorted
    std::vector<LatticePoint> missing;                 // predicted extreme terms that vanished
};

// Requires real coefficients (NotRealCoefficients otherwise).
GenericityReport check_genericity(const HarmonicPoly& h);

struct ShiftedHarmonic {
    HarmonicPoly h;
    double x0 = 0.0;
    GenericityReport report;
};

// h(z + x0) for the first x0 in {0, 1, 2, ...} whose polygons match the
// prediction. The zero count is unchanged by the real shift. Throws
// AssumptionFailed after max_shift attempts.
ShiftedHarmonic generic_shift(const HarmonicPoly& h, int max_shift = 32);

struct BernsteinReport {
    int off_axes = 0;
    double mixed_area = 0.0;
    bool holds = false;  // off_axes <= mixed_area
};

// Compares the certified off-axes count of rs with the mixed area of realify(h).
// Throws NotRealCoefficients for complex coefficients and InvalidArgument for
// an uncertified root set.
BernsteinReport bernstein_check(const HarmonicPoly& h, const RootSet& rs);

}  // namespace harmlab
