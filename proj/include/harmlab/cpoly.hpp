#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace harmlab {

using cplx = std::complex<double>;

// Dense univariate polynomial with complex coefficients, coeffs()[k] is the
// coefficient of z^k. The stored vector never ends in an exact zero, so the
// zero polynomial has no coefficients and degree() == kZeroDegree.
class CPoly {
public:
    static constexpr int kZeroDegree = -1;

    CPoly() = default;
    explicit CPoly(std::vector<cplx> coeffs);
    CPoly(std::initializer_list<cplx> coeffs);

    static CPoly constant(cplx c);
    static CPoly monomial(int power, cplx c = 1.0);
    // prod (z - r_k)
    static CPoly from_roots(std::span<const cplx> roots);
    // (z - a)^k
    static CPoly linear_power(cplx a, int k);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    cplx operator[](int k) const noexcept;
    cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

    // Sum of |a_k|.
    double norm1() const noexcept;
    bool has_real_coefficients(double tol = 1e-12) const noexcept;

    CPoly conj_coeffs() const;

    friend CPoly operator+(const CPoly& a, const CPoly& b);
    friend CPoly operator-(const CPoly& a, const CPoly& b);
    friend CPoly operator*(const CPoly& a, const CPoly& b);
    friend CPoly operator*(cplx s, const CPoly& a);
    CPoly operator-() const;

private:
    void trim();
    std::vector<cplx> coeffs_;
};

// Horner evaluation.
cplx eval(const CPoly& p, cplx z) noexcept;
// Value and first derivative in one Horner pass.
void eval_with_derivative(const CPoly& p, cplx z, cplx& value, cplx& deriv) noexcept;
// Sum |a_k| |z|^k, the natural scale for the rounding error of eval.
double eval_scale(const CPoly& p, cplx z) noexcept;

CPoly derivative(const CPoly& p);

// All Taylor coefficients of p at z: out[k] = p^{(k)}(z) / k!.
std::vector<cplx> taylor_coefficients(const CPoly& p, cplx z);
// Taylor coefficients of sum |p_k| x^k at x = r >= 0. They dominate the
// absolute terms summed by taylor_coefficients(p, z) for |z| = r, so a
// rounding bound for coefficient k is a small multiple of eps times entry k.
std::vector<double> taylor_magnitudes(const CPoly& p, double r);

// 1 + max_{k<n} |a_k| / |a_n|; every root lies strictly inside.
double cauchy_bound(const CPoly& p);

// All roots with multiplicity by Aberth-Ehrlich iteration followed by Newton
// polishing. Each root satisfies |P(z)| <= 1e-10 * sum |a_k||z|^k.
// Throws Error(NonConvergence) if that target is not met.
std::vector<cplx> all_roots(const CPoly& p);

struct RootCluster {
    cplx center;
    int multiplicity = 1;
};

// Groups roots lying within `radius` of each other (single linkage).
std::vector<RootCluster> cluster_roots(std::span<const cplx> roots, double radius = 1e-7);

// numerator / denominator, kept unreduced.
class RationalFn {
public:
    RationalFn(CPoly numerator, CPoly denominator);

    const CPoly& numerator() const noexcept { return num_; }
    const CPoly& denominator() const noexcept { return den_; }

    cplx operator()(cplx z) const noexcept;
    // f and f' at z.
    void eval_with_derivative(cplx z, cplx& value, cplx& deriv) const noexcept;
    // f^{(k)}(z)/k! for k = 0..order via Taylor series division.
    std::vector<cplx> taylor(cplx z, int order) const;

    // Numerator of f' = (N'D - ND') / D^2.
    CPoly derivative_numerator() const;

    // Roots shared by numerator and denominator (within `tol`). These are
    // reported to the caller and never cancelled.
    std::vector<cplx> common_roots(double tol = 1e-7) const;

private:
    CPoly num_;
    CPoly den_;
};

}  // namespace harmlab
