#pragma once

#include <cstdint>
#include <vector>

#include "sfcusp/errors.hpp"

namespace sfcusp {
namespace eta {

// Sparse integer power series: sorted (exponent, coefficient) pairs.
// The two generators below are the classical sparse expansions
//   prod_{n>=1} (1 - x^n)   = sum_j (-1)^j x^{j(3j-1)/2}   (pentagonal numbers)
//   prod_{n>=1} (1 - x^n)^3 = sum_{m>=0} (-1)^m (2m+1) x^{m(m+1)/2}
// They carry O(sqrt(prec)) terms, which is what makes the eta-power chains
// below feasible at prec ~ 10^6.
struct SparseSeries {
    std::vector<std::pair<uint64_t, long long>> terms;   // sorted by exponent
};

SparseSeries euler_product_sparse(uint64_t prec);   // prod (1 - x^n)
SparseSeries cube_sparse(uint64_t prec);            // prod (1 - x^n)^3

// Rescale exponents: f(x) -> f(x^d), dropping terms past prec.
SparseSeries dilate(const SparseSeries& s, uint64_t d, uint64_t prec);

// out = in * s, truncated to in.size().  out and in must be distinct.
template <class T>
void mul_sparse(std::vector<T>& out, const std::vector<T>& in, const SparseSeries& s) {
    const size_t n = in.size();
    out.assign(n, T(0));
    for (const auto& [e, c] : s.terms) {
        if (e >= n) break;
        const T cc(c);
        for (size_t i = e; i < n; ++i) out[i] += cc * in[i - e];
    }
}

// in-place: v /= s, requires s.terms[0] == (0, 1)
template <class T>
void div_sparse(std::vector<T>& v, const SparseSeries& s) {
    if (s.terms.empty() || s.terms[0].first != 0 || s.terms[0].second != 1)
        throw InvalidArgument("div_sparse: divisor must have unit constant term");
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        T acc = v[i];
        for (size_t k = 1; k < s.terms.size(); ++k) {
            const auto& [e, c] = s.terms[k];
            if (e > i) break;
            acc -= T(c) * v[i - e];
        }
        v[i] = acc;
    }
}

// Blocked, OpenMP-parallel double kernel for the large tables.  Identical
// accumulation order per output index regardless of thread count, so results
// are bit-reproducible.
void mul_sparse_fast(std::vector<double>& out, const std::vector<double>& in,
                     const SparseSeries& s);

// coefficients of prod (1-x^n)^e, e >= 1, via the sparse cube/pentagonal
// chain (repeated dense*sparse passes)
std::vector<double> euler_power_fast(unsigned e, uint64_t prec);

} // namespace eta
} // namespace sfcusp
