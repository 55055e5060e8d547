#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sfcusp/arith.hpp"
#include "sfcusp/characters.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/modforms.hpp"

using namespace sfcusp;
using namespace sfcusp::modforms;

TEST_CASE("Eisenstein normalization against the Bernoulli recurrence") {
    auto B = oracles::bernoulli(6);
    // -2k / B_k
    Rational c4 = Rational(-8) / B[4];
    Rational c6 = Rational(-12) / B[6];
    CHECK(c4 == Rational(240));
    CHECK(c6 == Rational(-504));
    QSeries e4 = eisenstein(4, 8), e6 = eisenstein(6, 8);
    CHECK(e4.coefficient(0) == Rational(1));
    CHECK(e4.coefficient(1) == c4);
    CHECK(e6.coefficient(1) == c6);
    CHECK(e4.coefficient(5) == Rational(240 * 126));   // 240 sigma_3(5)
    CHECK_THROWS_AS(eisenstein(8, 8), InvalidArgument);
}

TEST_CASE("delta against one-factor-at-a-time expansion") {
    const size_t prec = 40;
    QSeries d = delta(prec);
    auto brute = oracles::euler_product_brute({{1, 24}}, prec - 1);
    CHECK(d.coefficient(0) == Rational(0));
    CHECK(d.coefficient(1) == Rational(1));
    for (size_t n = 1; n < prec; ++n) CHECK(d.coefficient(n) == brute[n - 1]);
    CHECK(d.coefficient(2) == Rational(-24));
    // multiplicativity from brute-force factors
    CHECK(d.coefficient(6) == d.coefficient(2) * d.coefficient(3));
    CHECK_THROWS_AS(delta(1), InvalidArgument);
}

TEST_CASE("delta equals (E4^3 - E6^2)/1728 to precision 200") {
    const size_t prec = 200;
    QSeries d = delta(prec);
    QSeries rhs = scale(sub(pow(eisenstein(4, prec), 3), pow(eisenstein(6, prec), 2)),
                        Rational(BigInt(1), BigInt(1728)));
    CHECK(d.same_coefficients(rhs));
}

TEST_CASE("level-1 space dimensions and echelon pivots") {
    CHECK(level1_basis(12, 24).basis.size() == 1);
    CHECK(level1_basis(24, 24).basis.size() == 2);
    CHECK(level1_basis(2, 24).basis.size() == 0);
    CHECK(level1_basis(2, 24).modular_basis.size() == 0);
    CHECK(level1_basis(0, 24).modular_basis.size() == 1);
    CHECK(level1_basis(7, 24).modular_basis.empty());   // odd weight: empty space
    auto sp = level1_basis(36, 24);
    CHECK(sp.basis.size() == 3);
    for (size_t i = 0; i < sp.basis.size(); ++i)
        for (size_t j = 0; j < sp.basis.size(); ++j)
            CHECK(sp.basis[i].coefficient(j + 1) == (i == j ? Rational(1) : Rational(0)));
}

TEST_CASE("eta quotient constructor") {
    CHECK(eta_quotient({{1, 24}}, 1, 12, 30).same_coefficients(delta(30)));
    // level 11 weight 2
    QSeries f11 = eta_quotient({{1, 2}, {11, 2}}, 11, 2, 30);
    auto brute = oracles::euler_product_brute({{1, 2}, {11, 2}}, 29);
    for (size_t n = 1; n < 30; ++n) CHECK(f11.coefficient(n) == brute[n - 1]);
    CHECK(f11.coefficient(2) == Rational(-2));
    CHECK_THROWS_AS(eta_quotient({{1, 1}}, 1, 1, 10), InvalidArgument);
}

TEST_CASE("eta quotient with negative exponents (series division)") {
    // q prod(1-q^{2n})^24 / prod(1-q^n)^24, weight 0; multiplying back by the
    // denominator must reproduce the numerator exactly
    const size_t prec = 40;
    QSeries quot = eta_quotient({{1, -24}, {2, 24}}, 2, 0, prec);
    CHECK(quot.coefficient(0) == Rational(0));
    CHECK(quot.coefficient(1) == Rational(1));
    auto den = oracles::euler_product_brute({{1, 24}}, prec);
    auto num = oracles::euler_product_brute({{2, 24}}, prec);
    for (size_t n = 0; n < prec; ++n) {
        Rational conv(0);
        for (size_t j = 0; j + 1 <= n; ++j) conv += quot.coefficient(j + 1) * den[n - 1 - j];
        Rational expect = (n >= 1) ? num[n - 1] : Rational(0);
        CHECK(conv == expect);
    }
}

TEST_CASE("Hecke operator on q-expansions") {
    const size_t prec = 60;
    QSeries d = delta(prec);
    CharacterTable triv = CharacterTable::trivial(1);
    QSeries t2 = hecke(d, 2, 12, 1, triv);
    QSeries target = scale(d.truncated(t2.prec()), Rational(-24));
    CHECK(t2.same_coefficients(target));

    // linearity on the weight-24 cusp space
    auto sp = level1_basis(24, prec);
    QSeries f = sp.basis[0], g = sp.basis[1];
    QSeries lhs = hecke(add(f, g), 2, 24, 1, triv);
    QSeries rhs = add(hecke(f, 2, 24, 1, triv), hecke(g, 2, 24, 1, triv));
    CHECK(lhs.same_coefficients(rhs));

    // U_11 on the level-11 newform multiplies by a(11)
    QSeries f11 = eta_quotient({{1, 2}, {11, 2}}, 11, 2, prec * 11);
    QSeries u11 = hecke(f11, 11, 2, 11, CharacterTable::trivial(11));
    Rational a11 = f11.coefficient(11);
    QSeries scaled = scale(f11.truncated(u11.prec()), a11);
    CHECK(u11.same_coefficients(scaled));

    CHECK_THROWS_AS(hecke(delta(3), 5, 12, 1, triv), PrecisionExceeded);
}

TEST_CASE("eigenbasis: weight 12") {
    auto sp = level1_basis(12, 40);
    auto nf = eigenbasis(sp, {2});
    REQUIRE(nf.size() == 1);
    CHECK(nf[0].lambda(1) == cplx(1.0));
    CHECK(nf[0].lambda(2).real() == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-12));
    CHECK(nf[0].has_integral());
    CHECK(nf[0].integral_a[1] == BigInt(-24));
}

TEST_CASE("eigenbasis: weight 24 splits with distinct real eigenvalues") {
    auto sp = level1_basis(24, 80);
    auto nf = eigenbasis(sp, {2});
    REQUIRE(nf.size() == 2);
    CHECK(nf[0].lambda(2).imag() == 0.0);
    CHECK(nf[1].lambda(2).imag() == 0.0);
    CHECK(nf[0].lambda(2).real() != nf[1].lambda(2).real());
    // eigenvector property in lambda normalization:
    // lambda(2) lambda(n) = lambda(2n) + lambda(n/2) for odd-part splits
    for (const auto& r : nf) {
        for (uint64_t n = 3; n <= 39; n += 2) {
            cplx lhs = r.lambda(2) * r.lambda(n);
            cplx rhs = r.lambda(2 * n);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
        cplx lhs = r.lambda(2) * r.lambda(2);
        CHECK(std::abs(lhs - (r.lambda(4) + cplx(1.0))) < 1e-9);
    }
}

TEST_CASE("eigenbasis edge cases") {
    CHECK(eigenbasis(level1_basis(2, 20), {2}).empty());
    CHECK(eigenbasis(level1_basis(16, 20), {2}).size() == 1);
    auto sp = level1_basis(12, 40);
    CHECK_THROWS_AS(eigenbasis(sp, {}), InvalidArgument);
}

TEST_CASE("an oldspace orbit cannot be split: needs-more-primes") {
    // span{Delta(tau), Delta(2 tau)} inside weight 12, level 2: every good
    // T_p acts as the scalar tau(p), so no probe separates the two lifts
    const size_t prec = 64;
    QSeries d = delta(prec);
    QSeries d2 = degenerate_lift(d, 2, prec);
    // reduced echelon: pivots at q^1 and q^2
    QSeries b1 = add(d, scale(d2, Rational(24)));   // kills the q^2 coefficient
    FormSpace sp;
    sp.weight = 12;
    sp.level = 2;
    sp.character = CharacterTable::trivial(2);
    sp.basis = {b1, d2};
    CHECK(sp.basis[0].coefficient(1) == Rational(1));
    CHECK(sp.basis[0].coefficient(2) == Rational(0));
    CHECK_THROWS_AS(eigenbasis(sp, {2}), InvalidArgument);       // 2 divides the level
    CHECK_THROWS_AS(eigenbasis(sp, {3}), NeedsMorePrimes);
    CHECK_THROWS_AS(eigenbasis(sp, {3, 5}), NeedsMorePrimes);
}

TEST_CASE("chain-built weight-24 pair matches the exact eigen split") {
    auto sp = level1_basis(24, 120);
    auto exact = eigenbasis(sp, {2});
    auto [f, g] = weight24_newforms(110);
    // same deterministic order: ascending lambda(2)
    std::pair<const NewformRecord*, const NewformRecord*> chain =
        f.lambda(2).real() < g.lambda(2).real() ? std::make_pair(&f, &g)
                                                : std::make_pair(&g, &f);
    for (uint64_t n = 1; n <= 110; ++n) {
        CHECK(std::abs(exact[0].lambda(n) - chain.first->lambda(n)) < 1e-9);
        CHECK(std::abs(exact[1].lambda(n) - chain.second->lambda(n)) < 1e-9);
    }
}

TEST_CASE("delta coefficient table matches the exact expansion and is multiplicative") {
    auto tau = delta_coefficient_table(30000);
    QSeries d = delta(2001);
    for (size_t n = 1; n <= 2000; ++n)
        CHECK(tau[n - 1] == doctest::Approx(d.coefficient(n).to_double()).epsilon(1e-12));
    // multiplicativity spot checks at large indices (lambda normalization)
    auto lam = lambda_normalize(tau, 12);
    oracles::Rng rng(3);
    for (int it = 0; it < 50; ++it) {
        uint64_t m = static_cast<uint64_t>(rng.range(2, 170));
        uint64_t n = static_cast<uint64_t>(rng.range(2, 170));
        if (arith::gcd_u64(m, n) != 1 || m * n > 30000) continue;
        CHECK(std::abs(lam[m * n - 1] - lam[m - 1] * lam[n - 1]) < 1e-9);
    }
}

TEST_CASE("level-1 newform records for the scan weights") {
    for (int k : {12, 16, 18, 20, 22, 26}) {
        NewformRecord r = level1_newform(k, 200);
        CHECK(r.lambda(1) == cplx(1.0));
        CHECK(r.has_integral());
        // Hecke relation at p = 2, 3, 5 in lambda normalization
        for (uint64_t p : {2ull, 3ull, 5ull}) {
            cplx lhs = r.lambda(p) * r.lambda(p);
            CHECK(std::abs(lhs - (r.lambda(p * p) + cplx(1.0))) < 1e-9);
        }
    }
    CHECK_THROWS_AS(level1_newform(14, 50), InvalidArgument);
}

TEST_CASE("builtin eta newforms satisfy the newform identities") {
    for (uint64_t N : {2ull, 3ull, 5ull, 11ull}) {
        REQUIRE(has_builtin_eta_newform(N));
        NewformRecord r = builtin_eta_newform(N, 600);
        CHECK(r.level == N);
        CHECK(r.weight == static_cast<int>(24 / (N + 1)));
        CHECK(r.lambda(1) == cplx(1.0));
        for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull}) {
            if (N % p == 0) continue;
            cplx lhs = r.lambda(p) * r.lambda(p);
            CHECK(std::abs(lhs - (r.lambda(p * p) + cplx(1.0))) < 1e-8);
            CHECK(std::abs(r.lambda(p)) <= 2.0 + 1e-9);
        }
        // multiplicativity on small coprime pairs
        for (uint64_t m = 2; m <= 20; ++m)
            for (uint64_t n = m + 1; n <= 24 && m * n <= 600; ++n) {
                if (arith::gcd_u64(m, n) != 1) continue;
                CHECK(std::abs(r.lambda(m * n) - r.lambda(m) * r.lambda(n)) < 1e-8);
            }
    }
    CHECK_THROWS_AS(builtin_eta_newform(7, 50), InvalidArgument);
}

TEST_CASE("degenerate lift") {
    QSeries d = delta(40);
    CHECK(degenerate_lift(d, 1, 40).same_coefficients(d));
    QSeries l2 = degenerate_lift(d, 2, 40);
    CHECK(l2.coefficient(2) == Rational(1));
    CHECK(l2.coefficient(4) == Rational(-24));   // tau(2)
    for (size_t n = 1; n < 40; n += 2) CHECK(l2.coefficient(n) == Rational(0));
    // exactness: outputs are a permutation-with-zeros of inputs
    for (size_t n = 0; n < 40; ++n) {
        if (n % 2 == 0)
            CHECK(l2.coefficient(n) == d.coefficient(n / 2));
        else
            CHECK(l2.coefficient(n) == Rational(0));
    }

    // record overload produces the plain Fourier coefficients of f(delta tau)
    NewformRecord rec = level1_newform(12, 40);
    auto lifted = degenerate_lift(rec, 3, 40);
    for (uint64_t n = 1; n <= 40; ++n) {
        if (n % 3 == 0)
            CHECK(std::abs(lifted[n - 1] - cplx(rec.integral_a[n / 3 - 1].to_double())) <
                  1e-9 * (1.0 + std::abs(lifted[n - 1])));
        else
            CHECK(lifted[n - 1] == cplx(0.0));
    }
}

TEST_CASE("Hecke matrices for distinct good primes commute exactly (k = 36)") {
    auto sp = level1_basis(36, 40);
    REQUIRE(sp.basis.size() == 3);
    auto M2 = hecke_matrix(sp, 2);
    auto M3 = hecke_matrix(sp, 3);
    const size_t n = 3;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rational ab(0), ba(0);
            for (size_t l = 0; l < n; ++l) {
                ab += M2[i][l] * M3[l][j];
                ba += M3[i][l] * M2[l][j];
            }
            CHECK(ab == ba);
        }
}

TEST_CASE("character tables") {
    CharacterTable t = CharacterTable::trivial(12);
    CHECK(t.check().empty());
    CHECK(t.conductor == 1);
    CHECK(t(7) == cplx(1.0));
    CHECK(t(8) == cplx(0.0));
    CHECK(t.squarefree_quotient() == false);   // 12 is not square-free
    CHECK(CharacterTable::trivial(6).squarefree_quotient());

    CharacterTable q7 = CharacterTable::quadratic(7);
    CHECK(q7.check().empty());
    CHECK(q7.is_real);
    CHECK(q7.real_value(2) == 1);    // 2 = 3^2 mod 7
    CHECK(q7.real_value(3) == -1);
    CHECK_THROWS_AS(CharacterTable::quadratic(9), InvalidArgument);
}
