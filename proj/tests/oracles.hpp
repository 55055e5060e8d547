#pragma once

// Test-side oracles.  Everything here recomputes expected values by a route
// independent of the library code under test: brute-force divisibility,
// one-factor-at-a-time product expansion, Bernoulli recurrences, plain
// Riemann sums, Euler-Maclaurin zeta.

#include <complex>
#include <cstdint>
#include <vector>

#include "sfcusp/rational.hpp"

namespace oracles {

// xorshift64*, deterministic across platforms
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        uint64_t x = state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state = x;
        return x * 0x2545f4914f6cdd1dull;
    }
    long long range(long long lo, long long hi) {   // inclusive
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline bool squarefree_brute(uint64_t n) {
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

// B_0 .. B_n via sum_{j=0}^m binom(m+1, j) B_j = 0
inline std::vector<sfcusp::Rational> bernoulli(int n) {
    using sfcusp::BigInt;
    using sfcusp::Rational;
    std::vector<Rational> B(n + 1, Rational(0));
    B[0] = Rational(1);
    for (int m = 1; m <= n; ++m) {
        Rational acc(0);
        BigInt binom(1);   // binom(m+1, j), starting at j = 0
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * B[j];
            binom = binom * BigInt(m + 1 - j) / BigInt(j + 1);
        }
        B[m] = Rational(0) - acc / Rational(BigInt(m + 1));
    }
    return B;
}

// prod_{(d, r) in spec} prod_{n >= 1} (1 - q^{d n})^r, expanded one binomial
// factor at a time (positive exponents only), truncated to prec coefficients
inline std::vector<sfcusp::Rational> euler_product_brute(
    const std::vector<std::pair<uint64_t, int>>& spec, size_t prec) {
    using sfcusp::Rational;
    std::vector<Rational> acc(prec, Rational(0));
    acc[0] = Rational(1);
    for (const auto& [d, r] : spec) {
        for (int rep = 0; rep < r; ++rep) {
            for (uint64_t n = 1; n * d < prec; ++n) {
                // acc *= (1 - q^{d n})
                for (size_t i = prec; i-- > d * n;) acc[i] -= acc[i - d * n];
            }
        }
    }
    return acc;
}

// zeta(s) for real s > 1: partial Dirichlet series with Euler-Maclaurin tail
inline long double zeta(long double s, uint64_t M = 20000) {
    long double sum = 0.0L;
    for (uint64_t n = 1; n < M; ++n) sum += powl(static_cast<long double>(n), -s);
    long double m = static_cast<long double>(M);
    sum += powl(m, 1.0L - s) / (s - 1.0L);
    sum += 0.5L * powl(m, -s);
    sum += s * powl(m, -s - 1.0L) / 12.0L;
    sum -= s * (s + 1.0L) * (s + 2.0L) * powl(m, -s - 3.0L) / 720.0L;
    return sum;
}

// plain midpoint Riemann sum for the Mellin transform of the bump
inline std::complex<double> mellin_riemann(double beta, double norm,
                                           std::complex<double> s, size_t nodes) {
    std::complex<double> acc(0.0);
    const double h = 0.5 / static_cast<double>(nodes);
    for (size_t i = 0; i < nodes; ++i) {
        double y = 0.5 + (static_cast<double>(i) + 0.5) * h;
        double t = (y - 0.5) * (1.0 - y);
        if (t <= 0.0) continue;
        double om = norm * std::exp(-beta / t);
        acc += std::exp((s - std::complex<double>(1.0)) * std::log(y)) * om;
    }
    return acc * h;
}

} // namespace oracles
