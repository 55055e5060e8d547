#include "sfcusp/characters.hpp"

#include <cmath>
#include <cstdlib>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"

namespace sfcusp {

int CharacterTable::real_value(uint64_t n) const {
    if (!is_real) throw InvalidArgument("CharacterTable: exact values only for real characters");
    double re = values[n % modulus].real();
    if (re > 0.5) return 1;
    if (re < -0.5) return -1;
    return 0;
}

bool CharacterTable::squarefree_quotient() const {
    if (conductor == 0 || modulus % conductor != 0) return false;
    uint64_t q = modulus / conductor;
    return arith::mobius(q) != 0;
}

CharacterTable CharacterTable::trivial(uint64_t N) {
    if (N == 0) throw InvalidArgument("CharacterTable: modulus must be >= 1");
    CharacterTable t;
    t.modulus = N;
    t.conductor = 1;
    t.is_real = true;
    t.label = "trivial";
    t.values.assign(N, 0.0);
    for (uint64_t n = 0; n < N; ++n)
        if (arith::gcd_u64(n, N) == 1) t.values[n] = 1.0;
    if (N == 1) t.values[0] = 1.0;   // the unique character mod 1 is identically 1
    return t;
}

CharacterTable CharacterTable::quadratic(uint64_t p) {
    auto pf = arith::prime_factors(p);
    if (p < 3 || p % 2 == 0 || pf.size() != 1 || pf[0] != p)
        throw InvalidArgument("CharacterTable::quadratic: p must be an odd prime");
    CharacterTable t;
    t.modulus = p;
    t.conductor = p;
    t.is_real = true;
    t.label = "kronecker";
    t.values.assign(p, 0.0);
    for (uint64_t n = 1; n < p; ++n) {
        // Euler criterion: n^((p-1)/2) mod p
        uint64_t e = (p - 1) / 2, base = n % p, r = 1;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        t.values[n] = (r == 1) ? 1.0 : -1.0;
    }
    return t;
}

std::vector<std::string> CharacterTable::check(double tol) const {
    std::vector<std::string> bad;
    if (values.size() != modulus) {
        bad.push_back("table-size");
        return bad;
    }
    if (std::abs(values[1 % modulus] - 1.0) > tol) bad.push_back("chi(1)=1");
    bool support_ok = true, mult_ok = true, unit_ok = true;
    for (uint64_t n = 0; n < modulus; ++n) {
        bool coprime = arith::gcd_u64(n, modulus) == 1 || modulus == 1;
        double m = std::abs(values[n]);
        if (coprime ? std::abs(m - 1.0) > tol : m > tol) support_ok = false;
        if (coprime && std::abs(m - 1.0) > tol) unit_ok = false;
    }
    for (uint64_t a = 0; a < modulus && mult_ok; ++a)
        for (uint64_t b = a; b < modulus; ++b)
            if (std::abs(values[a * b % modulus] - values[a] * values[b]) > tol) {
                mult_ok = false;
                break;
            }
    if (!support_ok) bad.push_back("support");
    if (!unit_ok) bad.push_back("unit-circle");
    if (!mult_ok) bad.push_back("multiplicativity");
    return bad;
}

} // namespace sfcusp
