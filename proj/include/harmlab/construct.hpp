#pragma once

#include <cstdint>
#include <vector>

#include "harmlab/cpoly.hpp"
#include "harmlab/hroots.hpp"

namespace harmlab {

struct ConstructionParams {
    int n = 0;
    int m = 0;
    cplx a;
    cplx b;
};

// p = S + T and q = S - T, so that h = p + conj(q) = 2 Re S + 2i Im T and the
// zeros of h are the crossings of {Re S = 0} with {Im T = 0}.
struct ConstructionResult {
    ConstructionParams params;
    CPoly S, T, p, q;
    std::vector<cplx> t_coeffs;  // t_0 .. t_{n-m-2}
    CPoly U;                     // T / (z - b)^{m+1}
    // max_{k>m} |S_k - T_k| / max_k |S_k|, before truncating q to degree m.
    double degree_defect = 0.0;

    HarmonicPoly harmonic() const { return HarmonicPoly(p, q); }
};

// Evaluates a construction in factored form: h = 2 Re S + 2i Im T with
// T = (z - b)^{m+1} U. Near b the expanded T cancels to rounding noise; the
// factored form keeps Im T accurate there.
class ConstructionModel final : public HarmonicModel {
public:
    explicit ConstructionModel(const ConstructionResult& c);
    const HarmonicPoly& dense() const override { return dense_; }
    HarmonicJet jet(cplx z) const override;
    TaylorPair taylor(cplx c) const override;
    void newton_batch(const simd::NewtonParams& params, simd::PointsMut z,
                      std::span<std::uint8_t> converged) const override;

private:
    HarmonicPoly dense_;
    CPoly S_, dS_, U_, dU_;
    std::vector<cplx> s_, ds_, u_, du_;
    cplx b_;
    int k_;
};

// (z - a)^{n-1} (z + (n-1) a); monic, with S' = n (z - a)^{n-2} (z + (n-2) a).
CPoly build_S(int n, cplx a);

// T = (z - b)^{m+1} (z^{n-m-1} + t_{n-m-2} z^{n-m-2} + ... + t_0) with the t_j
// chosen so that S - T has degree <= m. Throws SingularSystem when the
// coefficient-matching system is singular.
ConstructionResult solve_T(const ConstructionParams& params);

struct ConstructionRoots {
    ConstructionResult construction;
    RootSet roots;
    // Every root lies on both {Re S = 0} and {Im T = 0} to 1e-7 relative.
    bool on_both_curves = true;
};

ConstructionRoots count_construction_roots(const ConstructionParams& params, const SearchOptions& opts = {});

// m^2 + m + n
inline int construction_lower_bound(int n, int m) { return m * m + m + n; }

struct ExcessRecord {
    int n = 0;
    int m = 0;
    cplx a;
    cplx b;
    int total = 0;
    int excessive = 0;
    bool certified = false;
};

// Fixed default for the offset of b: small, generic direction.
cplx default_experiment_eps();

// m = n - 2, a = 0, b = exp(i pi / (2n)) + eps; excessive = total - (m^2 + m + n).
ExcessRecord excessive_zeros_experiment(int n, cplx eps = default_experiment_eps(), const SearchOptions& opts = {});

struct ScanRow {
    ExcessRecord record;
    int wilmshurst_count = 0;  // n^2 - 2n + 4
};

struct ScanTable {
    std::vector<ScanRow> rows;
    std::vector<int> jumps;  // n where the excess grows over row n-1
    bool conclusive = true;  // false if any row was uncertified
};

ScanTable conjecture_scan(int n_max, cplx eps = default_experiment_eps(), const SearchOptions& opts = {});

// p = z^n + (z-1)^n + i r, q = z^n - (z-1)^n - i r with r a random real
// polynomial of degree n-1, r(0) != 0, scaled to max |coeff| = magnitude.
// Splits the n-fold zero at 0 while keeping Re h = 2 Re z^n.
HarmonicPoly wilmshurst_instance(int n, double magnitude, std::uint64_t seed);

struct WilmshurstRun {
    HarmonicPoly h;
    RootSet roots;
    int attempts = 0;
    bool sharp = false;  // certified with n^2 zeros
};

// Draws up to 1 + retries perturbations until one certifies with n^2 zeros.
WilmshurstRun wilmshurst_sharpness(int n, double magnitude = 1e-3, std::uint64_t seed = 1, int retries = 3,
                                   const SearchOptions& opts = {});

}  // namespace harmlab
