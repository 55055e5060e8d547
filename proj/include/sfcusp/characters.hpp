#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace sfcusp {

// Dirichlet character as an explicit value table mod N.  Only the trivial and
// real quadratic characters ship as built-ins; anything else can be supplied
// as a table (e.g. through the newform interchange format).
struct CharacterTable {
    uint64_t modulus = 1;
    uint64_t conductor = 1;
    std::vector<std::complex<double>> values;   // values[n] = chi(n mod N), size = modulus
    bool is_real = false;
    std::string label;   // "trivial", "kronecker", or "table"

    std::complex<double> operator()(uint64_t n) const { return values[n % modulus]; }
    // exact value for real characters: -1, 0 or 1
    int real_value(uint64_t n) const;

    // N / conductor is square-free (hypothesis of the threshold machinery)
    bool squarefree_quotient() const;

    static CharacterTable trivial(uint64_t N);
    // real character mod odd prime p via the Legendre symbol
    static CharacterTable quadratic(uint64_t p);

    // consistency check of the table invariants (multiplicativity, support,
    // unit-circle values); returns the violated invariant names
    std::vector<std::string> check(double tol = 1e-12) const;
};

} // namespace sfcusp
