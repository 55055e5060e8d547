#include "sfcusp/arith.hpp"

#include <algorithm>

#include "sfcusp/errors.hpp"

namespace sfcusp {
namespace arith {

uint64_t SquarefreeTable::count_upto(uint64_t x) const {
    uint64_t c = 0;
    for (uint64_t n = 1; n <= x && n <= limit; ++n)
        if (flags[n]) ++c;
    return c;
}

SquarefreeTable squarefree_sieve(uint64_t limit) {
    if (limit == 0) throw InvalidArgument("squarefree_sieve: limit must be >= 1");
    SquarefreeTable t;
    t.limit = limit;
    t.flags.assign(limit + 1, true);
    t.flags[0] = false;
    for (uint64_t p = 2; p * p <= limit; ++p) {
        // crossing out for composite p is redundant but harmless; restrict to
        // primes via a cheap check to keep the pass near O(limit log log limit)
        bool prime = true;
        for (uint64_t q = 2; q * q <= p; ++q)
            if (p % q == 0) { prime = false; break; }
        if (!prime) continue;
        uint64_t p2 = p * p;
        for (uint64_t m = p2; m <= limit; m += p2) t.flags[m] = false;
    }
    return t;
}

std::vector<uint32_t> prime_table(uint32_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (uint32_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return primes;
}

int mobius(uint64_t n) {
    if (n == 0) throw InvalidArgument("mobius: n must be >= 1");
    int r = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    }
    if (n > 1) r = -r;
    return r;
}

int nu(uint64_t n) {
    if (n == 0) throw InvalidArgument("nu: n must be >= 1");
    int c = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ++c;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ++c;
    return c;
}

BigInt divisor_power_sum(uint64_t n, unsigned w) {
    if (n == 0) throw InvalidArgument("divisor_power_sum: n must be >= 1");
    BigInt s = 0;
    for (uint64_t d : divisors(n)) s += BigInt::pow(BigInt(static_cast<long long>(d)), w);
    return s;
}

std::vector<uint64_t> divisors(uint64_t N) {
    if (N == 0) throw InvalidArgument("divisors: N must be >= 1");
    std::vector<uint64_t> ds;
    for (uint64_t d = 1; d * d <= N; ++d) {
        if (N % d == 0) {
            ds.push_back(d);
            if (d != N / d) ds.push_back(N / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    if (n == 0) throw InvalidArgument("prime_factors: n must be >= 1");
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::vector<uint64_t> squarefree_divisors(uint64_t N) {
    std::vector<uint64_t> ps = prime_factors(N);
    std::vector<uint64_t> ds{1};
    for (uint64_t p : ps) {
        size_t sz = ds.size();
        for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * p);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace arith
} // namespace sfcusp
