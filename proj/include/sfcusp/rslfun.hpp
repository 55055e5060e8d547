#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "sfcusp/modforms.hpp"
#include "sfcusp/rational.hpp"
#include "sfcusp/weights.hpp"

namespace sfcusp {
namespace rslfun {

using cplx = std::complex<double>;
using modforms::NewformRecord;

// Satake parameters at p: the roots of x^2 - lambda(p) x + chi(p),
// ordered by (Re, Im) for deterministic output.
struct SatakePair {
    uint64_t p = 0;
    cplx alpha1, alpha2;
};

SatakePair satake(cplx lambda_p, cplx chi_p, uint64_t p);

struct EulerProductEstimate {
    cplx s;
    uint64_t prime_cutoff = 0;
    cplx value;
    double tail_bound = 0.0;   // heuristic bound on the omitted log-product
};

struct WeightedSumResult {
    double x = 0.0;
    cplx value;
    uint64_t term_count = 0;
    enum class Method { direct, contour } method = Method::direct;
    double tail_estimate = 0.0;   // contour only: estimated |Im s| > T remainder
};

// sum over square-free n coprime to N in (x/2, x) of
// lambda_f(n) conj(lambda_g(n)) omega(n/x)
WeightedSumResult direct_weighted_sum(const NewformRecord& f, const NewformRecord& g,
                                      const weights::SmoothWeight& w, double x, uint64_t N);

// local correction factor H_p(s): (1 - p^{-2s}) at good p, the full
// prod_{i,j} (1 - alpha_i conj(beta_j) p^{-s}) at p | N
cplx euler_factor_H(uint64_t p, cplx s, uint64_t N,
                    const SatakePair& sat_f, const SatakePair& sat_g);

// local factor H_{1,p}(p^{-s}) at good p, where
//   H_{1,p}(X) = (1 + lambda_f(p) conj(lambda_g(p)) X) (1 - X^2)^{-1}
//                prod_{i,j} (1 - alpha_i conj(beta_j) X)
cplx euler_factor_H1(uint64_t p, cplx s, cplx lambda_f_p, cplx lambda_g_p,
                     const SatakePair& sat_f, const SatakePair& sat_g);

// First power-series coefficients of H_{1,p}(X) from lambda_f conj(lambda_g)
// and the four products alpha_i conj(beta_j).  Templated over the coefficient
// field so that the linear-term cancellation can be checked in exact rational
// arithmetic: coefficient 1 is c - e1 which vanishes identically whenever
// c = sum alpha_i conj(beta_j).
template <class F>
std::array<F, 3> h1_series_prefix(const F& lambda_prod, const std::array<F, 4>& sat_prod) {
    F e1 = sat_prod[0];
    for (int i = 1; i < 4; ++i) e1 = e1 + sat_prod[i];
    F e2 = lambda_prod;   // zero-initialize through the field
    e2 = e2 - e2;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e2 = e2 + sat_prod[i] * sat_prod[j];
    F one = lambda_prod;
    one = one - one;
    one = one + F(1);
    std::array<F, 3> c;
    c[0] = one;
    c[1] = lambda_prod - e1;
    c[2] = e2 - lambda_prod * e1 + one;
    return c;
}

// exact complex rationals for the symbolic-level checks
struct RationalComplex {
    Rational re, im;
    RationalComplex() = default;
    RationalComplex(long long v) : re(v), im(0) {}   // NOLINT: implicit by design
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex operator+(const RationalComplex& o) const { return {re + o.re, im + o.im}; }
    RationalComplex operator-(const RationalComplex& o) const { return {re - o.re, im - o.im}; }
    RationalComplex operator*(const RationalComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    RationalComplex conj() const { return {re, Rational(0) - im}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool operator==(const RationalComplex& o) const = default;
};

// unitary Satake pair from the rational circle parametrization
// alpha = ((1 - t^2) + 2 t i) / (1 + t^2); returns {alpha, conj(alpha)}
std::pair<RationalComplex, RationalComplex> unitary_satake_exact(const Rational& t);

// truncated Rankin-Selberg Euler product over p <= P; requires Re s >= 1.05
EulerProductEstimate rs_lfun_truncated(const NewformRecord& f, const NewformRecord& g,
                                       cplx s, uint64_t P);

// partial products of the correction factors over p <= P
cplx h_product(const NewformRecord& f, const NewformRecord& g, cplx s, uint64_t N, uint64_t P);
cplx h1_product(const NewformRecord& f, const NewformRecord& g, cplx s, uint64_t N, uint64_t P);

// bound shape (1+|t|)^4 k^2 N^3, implied constant taken as 1
double analytic_conductor_bound(int k, uint64_t N, double t);

// conductor^((1-sigma)/2 + eps) for 1/2 <= sigma <= 1
double convexity_bound(int k, uint64_t N, cplx s, double eps);

struct ContourOptions {
    double tail_tol_rel = 1e-4;
    double tail_tol_abs = 1e-8;
    double max_step = 0.1;
};

// Mellin-inversion oracle: (1/2 pi i) int_(sigma0) L_flat(s) x^s omega~(s) ds
// with L_flat evaluated as a truncated square-free Dirichlet series (cutoff P)
// and the line integral truncated at |Im s| = T.  Trapezoid in t; the step
// resolves every frequency present in the integrand (band-limited sum).
WeightedSumResult contour_sum_oracle(const NewformRecord& f, const NewformRecord& g,
                                     const weights::SmoothWeight& w, double x, uint64_t N,
                                     double sigma0, double T, uint64_t P,
                                     const ContourOptions& opt = {});

// Richardson extrapolation of delta * L(f (x) conj f, 1 + delta) toward
// delta -> 0 along the given decreasing grid in [0.05, 0.5]
double residue_estimate(const NewformRecord& f, uint64_t N, uint64_t P,
                        const std::vector<double>& delta_grid);

// C(f, omega) = H(1) H1(1) Res_{s=1} L(f (x) conj f, s) omega~(1)
double c_constant(const NewformRecord& f, const weights::SmoothWeight& w,
                  uint64_t N, uint64_t P,
                  const std::vector<double>& delta_grid = {0.5, 0.45, 0.4, 0.35, 0.3, 0.25});

} // namespace rslfun
} // namespace sfcusp
