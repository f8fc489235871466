#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "harmlab/cpoly.hpp"
#include "harmlab/simd.hpp"

namespace harmlab {

// h(z) = p(z) + conj(q(z)) with deg p = n > deg q = m. A zero q (m = -1) is
// allowed and makes h analytic.
class HarmonicPoly {
public:
    HarmonicPoly(CPoly p, CPoly q);

    const CPoly& p() const noexcept { return p_; }
    const CPoly& q() const noexcept { return q_; }
    const CPoly& dp() const noexcept { return dp_; }
    const CPoly& dq() const noexcept { return dq_; }
    int n() const noexcept { return p_.degree(); }
    int m() const noexcept { return q_.degree(); }

    // f = p'/q', whose unit level set bounds the sense-reversing region.
    RationalFn f() const;

private:
    CPoly p_, q_, dp_, dq_;
};

cplx eval_h(const HarmonicPoly& h, cplx z) noexcept;
// Rounding scale for eval_h: sum |p_k||z|^k + sum |q_k||z|^k.
double eval_h_scale(const HarmonicPoly& h, cplx z) noexcept;

// h with its first derivatives at one point. scale is the magnitude that
// rounding in h is relative to; err_re / err_im bound the rounding of each
// component of h. jacobian = |p'|^2 - |q'|^2, evaluated in whatever form the
// model keeps accurate, with its sign trusted beyond jac_tol.
struct HarmonicJet {
    cplx h, dp, dq;
    cplx dA, dB;  // derivatives of A = p + q and B = p - q
    double scale = 0.0;
    double err_re = 0.0, err_im = 0.0;
    double jacobian = 0.0, jac_tol = 0.0;
};

// Re h = Re A and Im h = Im B for the analytic pair A = p + q, B = p - q.
// Taylor data of A and B at a point, with per-coefficient rounding bounds.
struct TaylorPair {
    std::vector<cplx> a, b;
    std::vector<double> ea, eb;
};

// Evaluation strategy for h; Re h = Re A and Im h = Im B. The dense model runs Horner on the expanded
// coefficients; structured models (such as factored constructions) keep h
// accurate where the expanded form cancels catastrophically.
class HarmonicModel {
public:
    virtual ~HarmonicModel() = default;
    // Expanded coefficients; used for degree and the enclosure radius.
    virtual const HarmonicPoly& dense() const = 0;
    virtual HarmonicJet jet(cplx z) const = 0;
    virtual TaylorPair taylor(cplx c) const = 0;
    // Batched Newton on (Re h, Im h), in place.
    virtual void newton_batch(const simd::NewtonParams& params, simd::PointsMut z,
                              std::span<std::uint8_t> converged) const = 0;

    cplx value(cplx z) const { return jet(z).h; }
};

class DenseModel final : public HarmonicModel {
public:
    explicit DenseModel(const HarmonicPoly& h);
    const HarmonicPoly& dense() const override { return h_; }
    HarmonicJet jet(cplx z) const override;
    TaylorPair taylor(cplx c) const override;
    void newton_batch(const simd::NewtonParams& params, simd::PointsMut z,
                      std::span<std::uint8_t> converged) const override;

private:
    HarmonicPoly h_;
    CPoly A_, B_, dA_, dB_;
    std::vector<cplx> a_, da_, b_, db_;
};

enum class Orientation { Preserving, Reversing, Singular };

const char* to_string(Orientation o) noexcept;

// Sign of the Jacobian |p'|^2 - |q'|^2 with tolerance 1e-9 * (|p'|^2 + |q'|^2 + 1).
Orientation orientation_at(const HarmonicPoly& h, cplx z) noexcept;
// Sign of j.jacobian against j.jac_tol.
Orientation orientation_at(const HarmonicJet& j) noexcept;

// A closed curve parametrized over t in [0, 1), with gamma(1) == gamma(0).
using ClosedCurve = std::function<cplx(double)>;

ClosedCurve circle_curve(cplx center, double radius);
// Piecewise-linear closed curve through the vertices (last joins first).
ClosedCurve polyline_curve(std::vector<cplx> vertices);

// Winding number of F along the curve, from `samples` initial points refined
// until every adjacent argument step is below pi/2. Throws CurveThroughZero if
// |F| drops below 1e-13 times the largest sampled |F|.
int winding_number(const std::function<cplx(cplx)>& F, const ClosedCurve& curve, int samples = 64);
// Winding of h along the curve. A sample counts as zero only when both
// components of h lie inside the model's rounding bounds.
int winding_number(const HarmonicModel& model, const ClosedCurve& curve, int samples = 64);

struct Root {
    cplx location;
    Orientation orientation = Orientation::Singular;
    int winding = 0;        // from the certification circle
    double residual = 0.0;  // |h(location)|
    double cert_radius = 0.0;
    bool certified = false;  // winding == +1 preserving / -1 reversing
};

struct RootSet {
    std::vector<Root> roots;
    int n_plus = 0;
    int n_minus = 0;
    bool certified = false;

    // Diagnostics behind the certified flag.
    int degree = 0;                  // n
    int outer_winding = 0;           // winding of h on the outer circle
    double enclosure_radius = 0.0;   // every zero satisfies |z| < enclosure_radius
    bool fixpoint_reached = false;   // two successive halvings found nothing new
    int levels = 0;                  // grid levels run
    long seeds = 0;                  // Newton starts used in total
    bool singular_detected = false;  // some zero failed +-1 certification
    bool exclusion_complete = false; // quadtree proved there are no other zeros
    long exclusion_cells = 0;
    std::string note;

    std::size_t size() const noexcept { return roots.size(); }
};

struct SearchOptions {
    double pitch = 0.0;         // hex grid pitch; 0 selects R / (8n)
    double merge_radius = 0.0;  // 0 selects 1e-8 * (1 + R)
    int max_levels = 5;         // grid levels including the first
    long seed_budget = 8'000'000;
    int newton_iters = 80;
    bool exclusion_sweep = true;
    long exclusion_cell_budget = 4'000'000;
};

// Provable enclosure: every zero satisfies |p(z)| = |q(z)|, impossible once
// |p_n| r^n > sum_{k<n} (|p_k| + |q_k|) r^k. Returns a radius beyond the
// positive root of that Cauchy-type polynomial.
double enclosure_radius(const HarmonicPoly& h);
// The closed-form over-estimate 1 + (sum_{k<n}|p_k| + sum|q_k|) / |p_n|.
double crude_enclosure_radius(const HarmonicPoly& h);

// Multistart Newton on a hexagonal seed grid with pitch refinement, plus an
// optional exclusion sweep; every root is certified by a small winding circle.
RootSet find_all_zeros(const HarmonicModel& model, const SearchOptions& opts = {});
RootSet find_all_zeros(const HarmonicPoly& h, const SearchOptions& opts = {});

// Throws SingularZeroDetected when the set contains a zero that failed
// certification as sense-preserving or sense-reversing.
void require_regular(const RootSet& rs);

// Roots with |Re z| > 1e-8 and |Im z| > 1e-8.
int off_axes_count(const RootSet& rs);

struct CertifiedDisk {
    cplx center;
    double radius;
    cplx zero;  // best approximation found for the enclosed zero
};

struct ExclusionResult {
    std::vector<CertifiedDisk> disks;  // each holds exactly one zero
    std::vector<cplx> unresolved;      // centers of cells neither excluded nor covered
    long cells = 0;
    bool complete = false;
};

// Quadtree over [-R, R]^2. A cell is dropped when a Taylor bound shows Re A
// or Im B has no zero in it, or covered when it lies in a disk that provably
// holds exactly one zero (found by Newton from the cell center).
ExclusionResult exclusion_sweep(const HarmonicModel& model, double radius, long cell_budget);
ExclusionResult exclusion_sweep(const HarmonicPoly& h, double radius, long cell_budget);

// Largest r (searched by halving from r0) for which the Taylor bounds at z
// prove h has exactly one zero in |w - z| <= r; 0 if none. The proof shows
// w -> w - J^{-1} h(w) is a contraction of the disk into itself, with J the
// real Jacobian of h at z.
double uniqueness_radius(const HarmonicModel& model, cplx z, double r0);
double uniqueness_radius(const HarmonicPoly& h, cplx z, double r0);

// (p, q + delta z^{m_new}) with delta = half the Rouche margin over the
// certification circles, so every circle keeps its winding number.
struct Perturbation {
    HarmonicPoly h;
    double delta;
};
Perturbation perturb_antianalytic(const HarmonicPoly& h, const RootSet& rs, int m_new);

}  // namespace harmlab
