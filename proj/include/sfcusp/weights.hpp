#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace sfcusp {
namespace weights {

using cplx = std::complex<double>;

// Smooth positive cutoff supported in [1/2, 1]:
//   omega(y) = c * exp(-beta / ((y - 1/2)(1 - y)))   on (1/2, 1), 0 outside.
// The default normalization c = exp(16 beta) puts the maximum at 1, so the
// weight doubles as the 0 <= omega <= 1 comparison variant.
struct SmoothWeight {
    std::string family = "expbump";   // the one shipped family
    double beta = 1.0;
    double norm = 0.0;            // 0 means "max-1 normalization" exp(16 beta)
    double quad_tol = 1e-10;      // absolute tolerance for the Mellin quadrature
    size_t quad_budget = 4000;    // max adaptive segments

    double normalization() const;
    double operator()(double y) const;
};

double bump(double y, const SmoothWeight& w);

struct MellinValue {
    cplx s;
    cplx value;
    double error_estimate = 0.0;
};

// omega~(s) = int_0^infty y^(s-1) omega(y) dy, evaluated over the support
// [1/2, 1] by adaptive Gauss-Kronrod refinement.  Oscillation-aware initial
// subdivision keeps at least 8 nodes per period of y^(i Im s) at large
// heights.  Throws QuadratureFailure when the budget cannot reach quad_tol.
MellinValue mellin(const SmoothWeight& w, cplx s);

struct DecayReport {
    double A = 0.0;
    double empirical_exponent = 0.0;   // slope of log|omega~| against log|s|
    double threshold = 0.0;            // -(A+1) + 0.25
    bool passes = false;
    std::vector<std::pair<double, double>> samples;   // (log|s|, log|omega~|)
};

// fit the decay exponent of |omega~(sigma + i t)| on the given heights
DecayReport decay_check(const SmoothWeight& w, double A,
                        const std::vector<double>& t_samples, double sigma = 2.0);

} // namespace weights
} // namespace sfcusp
