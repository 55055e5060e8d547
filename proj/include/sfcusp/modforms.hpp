#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sfcusp/characters.hpp"
#include "sfcusp/qseries.hpp"

namespace sfcusp {
namespace modforms {

using cplx = std::complex<double>;

// Normalized Hecke newform: lambda(n) = a(n) / n^((k-1)/2), lambda(1) = 1.
// lambda is stored 1-based in spirit: lambda(n) == lambda_values[n-1].
// Integral Fourier coefficients a(n) are kept alongside when the construction
// is exact (level-1 rational eigenforms, eta quotients).
struct NewformRecord {
    uint64_t level = 1;
    int weight = 0;
    CharacterTable character;
    std::vector<cplx> lambda_values;
    std::vector<BigInt> integral_a;   // empty unless exactly known
    enum class Source { computed, ingested } source = Source::computed;
    std::string name;

    size_t prec() const { return lambda_values.size(); }
    cplx lambda(uint64_t n) const;        // throws PrecisionExceeded past prec
    bool has_integral() const { return !integral_a.empty(); }
};

// Cusp form space with an echelonized basis: basis[i] = q^(i+1) + O(q^(d+1)),
// pivots at q^1..q^d.  level 1 only gets a computed basis; other levels hold
// whatever newforms were supplied or built in.
struct FormSpace {
    int weight = 0;
    uint64_t level = 1;
    CharacterTable character;
    std::vector<QSeries> modular_basis;   // echelon basis of M_k (level 1)
    std::vector<QSeries> basis;           // echelon basis of the cuspidal subspace
    std::vector<NewformRecord> newforms;

    size_t cusp_dim() const { return basis.size(); }
};

// normalized Eisenstein series, k in {4, 6}: 1 - (2k/B_k) sum sigma_{k-1}(n) q^n
QSeries eisenstein(int k, size_t prec);

// discriminant cusp form q prod (1-q^n)^24
QSeries delta(size_t prec);

// echelonized monomial basis E4^a E6^b of M_k(SL2(Z)) and its cuspidal part
FormSpace level1_basis(int k, size_t prec);

// eta quotient prod_d eta(d tau)^{r_d} as a q-expansion.
// spec: list of (divisor d, exponent r_d); requires sum r_d * d = 0 mod 24.
QSeries eta_quotient(const std::vector<std::pair<uint64_t, int>>& spec,
                     uint64_t N, int k, size_t prec);

// Hecke operator T_p (U_p when p | N) on q-expansions; output precision is
// floor(prec / p).
QSeries hecke(const QSeries& f, uint64_t p, int k, uint64_t N, const CharacterTable& chi);

// b(n) = a(n / delta) when delta | n, else 0
QSeries degenerate_lift(const QSeries& f, uint64_t delta, size_t prec);
std::vector<cplx> degenerate_lift(const NewformRecord& f, uint64_t delta, size_t prec);

// Simultaneous Hecke eigenbasis of the cuspidal subspace, lambda-normalized.
// Rational eigenvalues are extracted exactly; irrational ones through
// certified interval root isolation of the characteristic polynomial.
std::vector<NewformRecord> eigenbasis(const FormSpace& space,
                                      const std::vector<uint64_t>& probe_primes);

// exact rational Hecke matrix of T_p on the cuspidal echelon basis
std::vector<std::vector<Rational>> hecke_matrix(const FormSpace& space, uint64_t p);

// ---- large coefficient tables (double precision, eta power chains) ----

// tau(n) for 1 <= n <= n_max as doubles (tau(n) = delta coefficient)
std::vector<double> delta_coefficient_table(uint64_t n_max);

// the unique level-1 newform of weight k in {12,16,18,20,22,26}, lambda
// known to prec
NewformRecord level1_newform(int k, size_t prec);

// the two weight-24 level-1 newforms with lambda known to prec
std::pair<NewformRecord, NewformRecord> weight24_newforms(size_t prec);

// curated eta-quotient newforms eta(tau)^r eta(N tau)^r with r (N+1) = 24:
// (N, k) in {(2,8), (3,6), (5,4), (11,2)}
NewformRecord builtin_eta_newform(uint64_t N, size_t prec);
bool has_builtin_eta_newform(uint64_t N);

// lambda-normalize exact integral coefficients; extended precision inside
std::vector<cplx> lambda_normalize(const std::vector<BigInt>& a, int weight);
std::vector<cplx> lambda_normalize(const std::vector<double>& a, int weight);

} // namespace modforms
} // namespace sfcusp
