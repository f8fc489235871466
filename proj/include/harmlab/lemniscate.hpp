#pragma once

#include <functional>
#include <vector>

#include "harmlab/cpoly.hpp"
#include "harmlab/hroots.hpp"

namespace harmlab {

// The critical lemniscate {|f| = 1} bounds Omega = {|f| < 1}. On it
// f = e^{i theta}, so its points at a given theta are the roots of
// N - e^{i theta} D for f = N / D. Tracing follows those roots as theta runs
// once around the circle; a contour closes after zero_count turns.

struct LemniscateSample {
    cplx z;
    double theta = 0.0;  // continuous arg f(z)
    cplx f_val;
    cplx fprime_val;
    bool critical = false;  // f'(z) = 0; tangent undefined here
};

// Point of the lemniscate with f' = ... = f^{(order-1)} = 0.
struct CriticalPoint {
    cplx z;
    double theta = 0.0;  // arg f(z) in [0, 2 pi) globally; continuous on a contour
    int order = 2;
};

// One closed boundary curve of a component of Omega, oriented with Omega on
// its left: counterclockwise for an outer boundary, clockwise for a hole.
// theta runs over [theta_start, theta_start + 2 pi zero_count).
struct CurveComponent {
    std::vector<LemniscateSample> samples;
    int zero_count = 0;
    std::vector<CriticalPoint> critical_points;
    int component_id = 0;  // contours bounding the same component of Omega share it
    bool hole = false;
    double theta_start = 0.0;
    bool harmonic = false;  // samples at equal theta increments
    // Dense traced samples kept by a resampled contour; point_at predicts
    // from these so that sharp turns between coarse samples stay resolved.
    std::vector<LemniscateSample> trace;

    double theta_end() const noexcept;
    double signed_area() const noexcept;
    std::vector<cplx> polyline() const;
};

struct OmegaDecomposition {
    std::vector<CurveComponent> components;
    int total_zero_count = 0;
    std::vector<CriticalPoint> critical_points;
    // Points where q' (the denominator of f) vanishes on the lemniscate.
    std::vector<cplx> denominator_zeros_on_curve;

    int region_count() const;
    // No hole contours share the id.
    bool simply_connected(int component_id) const;
};

struct TraceOptions {
    double max_step = 6.283185307179586 / 256;  // in theta
    double max_turn = 2.0 * 3.141592653589793 / 180.0;  // tangent turn per step
    double saddle_gap = 1e-7;  // theta distance at which saddles are bridged
    double on_curve_tol = 1e-6;  // ||f| - 1| for a critical point to count as on the curve
};

// Throws TraceStall when the step size collapses away from a saddle and
// SaddleUnresolved when branches at a critical point cannot be paired.
OmegaDecomposition trace_lemniscate(const RationalFn& f, const TraceOptions& opts = {});

// Winding number of f along the contour.
int zeros_inside(const RationalFn& f, const CurveComponent& C);

// eta(theta) on the contour: the root of N - e^{i theta} D continued from the
// nearest traced sample.
cplx point_at(const RationalFn& f, const CurveComponent& C, double theta);

LemniscateSample sample_at(const RationalFn& f, const CurveComponent& C, double theta);

// Increment of a continuous angle function along the contour from ta (value
// pa) to tb (value pb), bisected until every piece turns by at most pi/2.
// Throws BranchJump after 30 halvings.
double angle_increment(const RationalFn& f, const CurveComponent& C,
                       const std::function<double(const LemniscateSample&)>& angle, double ta, double pa, double tb,
                       double pb);

// Resamples at theta_start + j * 2 pi / samples_per_turn.
CurveComponent harmonic_parametrization(const RationalFn& f, const CurveComponent& C, int samples_per_turn = 1024);

// v = i f / f', the velocity d eta / d theta. Throws CriticalPoint when
// |f'(z)| is below 1e-12 relative, NotOnLemniscate when ||f(z)| - 1| > 1e-6.
cplx tangent_v(const RationalFn& f, cplx z);

// d/dtheta [arg v + arg q'] per sample by central differences of the
// unwrapped angle; NaN on samples whose stencil straddles a critical point.
// Throws BranchJump if an adjacent angle step exceeds pi/2 after one local
// refinement.
std::vector<double> curvature_ratio(const HarmonicPoly& h, const CurveComponent& C);
// The same quantity in closed form: Re(1 - f f'' / f'^2) + Im(v q'' / q').
double curvature_ratio_at(const HarmonicPoly& h, cplx z);

struct WedgeStructure {
    int k = 0;
    std::vector<double> angles;  // 2k ray directions, ascending
};

// Throws NotOnLemniscate if ||f(z0)| - 1| > 1e-6 and NotCritical if f'(z0) != 0.
WedgeStructure wedge_structure(const RationalFn& f, cplx z0);

// Smallest of the finite curvature ratios, or +inf.
double min_curvature_ratio(const std::vector<double>& ratios);

}  // namespace harmlab
