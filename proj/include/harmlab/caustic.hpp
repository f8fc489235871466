#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "harmlab/hroots.hpp"
#include "harmlab/lemniscate.hpp"

namespace harmlab {

// Caustic of h = p + conj(q): the image h(eta(theta)) of a lemniscate contour.
// With w = i v q' sqrt(f) and |f| = 1 the tangent factors as
//   V = v p' + conj(v q') = 2 sqrt(f) Im(w),
// so arg V advances like theta / 2 and the direction reverses (a cusp) exactly
// where Im w changes sign. Psi = arg w, tracked continuously, counts cusps as
// its crossings of multiples of pi.

enum class CuspKind { SmoothSignChange, BranchCut, CriticalPoint };

const char* to_string(CuspKind k) noexcept;

struct Cusp {
    double theta = 0.0;
    cplx z;
    cplx image;
    CuspKind kind = CuspKind::SmoothSignChange;
    int direction = 1;  // +1 where Psi increases through l pi, -1 where it decreases
};

struct CausticCurve {
    std::vector<double> theta;
    std::vector<cplx> image_samples;
    std::vector<cplx> V_samples;  // NaN on critical samples
    std::vector<double> psi_samples;
    std::vector<Cusp> cusps;
    double psi_increment = 0.0;  // over the whole contour, seam included
    int zero_count = 0;
    int component_id = 0;
    bool hole = false;

    std::vector<cplx> polyline() const { return image_samples; }
};

struct TangentV {
    cplx V;         // v p' + conj(v q')
    cplx factored;  // 2 sqrt(f) Im(i v q' sqrt(f))
};

// Throws CriticalPoint and NotOnLemniscate as tangent_v, and AssumptionFailed
// if the two forms differ by more than 1e-9 of |v| (|p'| + |q'|).
TangentV tangent_V(const HarmonicPoly& h, const RationalFn& f, cplx z);

// Psi on the samples of a harmonic parametrization: arg v and arg q' are
// unwrapped together, arg sqrt(f) = theta / 2, and at a critical point of
// order k arg v jumps by (k - 1) pi / k. A critical sample holds the value
// after the jump. The closing step past the last sample is in psi_increment
// of detect_cusps.
std::vector<double> psi(const HarmonicPoly& h, const CurveComponent& C);

// Crossings of l pi by Psi between samples whose |sin Psi| exceeds 1e-7,
// located by bisection to 1e-8 in theta. A crossing inside the arg v jump is
// a CriticalPoint cusp at the critical point; one in the interval closing the
// contour across the seam of sqrt(f) is a BranchCut cusp.
CausticCurve detect_cusps(const HarmonicPoly& h, const CurveComponent& C);

struct ArcFit {
    double theta_begin = 0.0, theta_end = 0.0;
    double slope = 0.0;
    double residual = 0.0;  // rms deviation of unwrapped arg V from the fit
    int samples = 0;
};

// Least-squares slope of unwrapped arg V against theta on each arc between
// cusps, using samples with |sin Psi| > 1e-6 and at least `margin` samples
// away from cusps and critical points. Arcs with fewer than 8 usable samples
// are skipped.
std::vector<ArcFit> arc_slopes(const CausticCurve& cc, const CurveComponent& C, int margin = 4);

struct WindingProfile {
    double x0 = 0.0, y0 = 0.0, cell = 0.0;  // cell (i, j) centers at x0 + (i + 1/2) cell
    int nx = 0, ny = 0;
    // Number of preimages enclosed: minus the winding of the image of the
    // positively oriented boundary. Cells touching the curve hold kOnCurve.
    std::vector<int> values;
    int max_value = 0;
    int min_value = 0;
    std::optional<cplx> deep_point;  // value >= 2, farthest from the curve
    double deep_clearance = 0.0;
    static constexpr int kOnCurve = -1000000;

    int at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

// Evaluated on a grid x grid lattice over the bounding box of the curves with
// a 5% margin. When the grid finds no value >= 2, points just off each
// self-intersection of the curves are probed as well.
WindingProfile winding_profile(const std::vector<std::vector<cplx>>& boundary_images, int grid = 128);
WindingProfile winding_profile(const std::vector<CausticCurve>& caustics, int grid = 128);

// Preimage count of a single point (0 far outside).
int preimage_count(const std::vector<std::vector<cplx>>& boundary_images, cplx w);

struct TwoZeroCertificate {
    double phi = 0.0;
    cplx A;
    std::vector<cplx> zeros_found;
    int component_id = 0;
};

struct TwoZeroOptions {
    int phi_steps = 256;
    int grid = 96;
    int samples_per_turn = 2048;
    bool require_condition = true;  // reject components with min ratio >= -1/2
};

struct TwoZeroScan {
    std::optional<TwoZeroCertificate> certificate;
    double min_ratio = 0.0;
    std::vector<int> cusp_counts;  // per phi step scanned
    int steps_scanned = 0;
};

// Scans phi_j = 4 pi j / phi_steps. For each phi the caustic of
// e^{i phi} p + conj(q) over the contour is profiled; the deepest point P of
// value >= 2 gives A = -P, and the zeros of e^{i phi} p + A + conj(q) are
// certified and counted inside the component. Stops at the first success.
// Throws AssumptionFailed if the contour has zero_count != 1 or is a hole,
// or when require_condition is set and the condition fails.
TwoZeroScan two_zero_scan(const HarmonicPoly& h, const OmegaDecomposition& om, std::size_t contour,
                          const TwoZeroOptions& opts = {});

// As two_zero_scan; throws NotFound with the per-phi cusp count histogram.
TwoZeroCertificate two_zero_search(const HarmonicPoly& h, const OmegaDecomposition& om, std::size_t contour,
                                   const TwoZeroOptions& opts = {});

// Zeros in rs lying inside the component bounded by the contours sharing
// component_id.
std::vector<cplx> zeros_in_component(const OmegaDecomposition& om, int component_id, const RootSet& rs);

// Local quadratic model gamma(t) = z0 + direction t + quadratic t^2 of one
// boundary arc through a critical point of order 2, by arclength t >= 0.
struct ArcModel {
    cplx direction;
    cplx quadratic;
    double curvature = 0.0;  // signed, for travel along +direction
};

struct InflectionReport {
    bool perpendicular = false;
    bool no_inflection = false;
    std::array<double, 2> values{};  // Re(e^{+-i pi/4} L3 / L2^{3/2})
    cplx L2, L3;                     // (log f)'' and (log f)''' at z0
    std::array<ArcModel, 2> arcs{};
};

// Requires |f(z0)| = 1 within 1e-8, f'(z0) = 0 within 1e-7 relative and
// (log f)''(z0) != 0; throws AssumptionFailed naming the failed hypothesis.
InflectionReport inflection_check(const RationalFn& f, cplx z0);

}  // namespace harmlab
