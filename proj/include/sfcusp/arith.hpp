#pragma once

#include <cstdint>
#include <vector>

#include "sfcusp/bigint.hpp"

namespace sfcusp {
namespace arith {

// Bitmap of square-free integers, 1-based: flags[n] is true iff no prime
// square divides n.  Built by crossing out multiples of p^2.
struct SquarefreeTable {
    uint64_t limit = 0;
    std::vector<bool> flags;   // size limit + 1; index 0 unused

    bool operator[](uint64_t n) const { return flags[n]; }
    uint64_t count_upto(uint64_t x) const;   // #{n <= x : n square-free}
};

SquarefreeTable squarefree_sieve(uint64_t limit);

// Primes up to limit, increasing.
std::vector<uint32_t> prime_table(uint32_t limit);

// Moebius function; 0 iff n is not square-free.
int mobius(uint64_t n);

// Number of distinct prime divisors.
int nu(uint64_t n);

// sigma_w(n) = sum of d^w over divisors d of n.  Exact.
BigInt divisor_power_sum(uint64_t n, unsigned w);

// All square-free divisors of N, increasing.  Always contains 1; the result
// has exactly 2^nu(N) entries.
std::vector<uint64_t> squarefree_divisors(uint64_t N);

// All divisors of N, increasing.
std::vector<uint64_t> divisors(uint64_t N);

// Distinct prime factors of n, increasing.
std::vector<uint64_t> prime_factors(uint64_t n);

uint64_t gcd_u64(uint64_t a, uint64_t b);

} // namespace arith
} // namespace sfcusp
