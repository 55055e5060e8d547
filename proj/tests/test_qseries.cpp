#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/qseries.hpp"

using namespace sfcusp;

namespace {

QSeries from_ints(std::initializer_list<long long> v) {
    std::vector<Rational> c;
    for (long long x : v) c.emplace_back(x);
    return QSeries(std::move(c));
}

QSeries random_series(oracles::Rng& rng, size_t prec) {
    std::vector<Rational> c(prec);
    for (auto& x : c) x = Rational(BigInt(rng.range(-9, 9)), BigInt(rng.range(1, 6)));
    return QSeries(std::move(c));
}

} // namespace

TEST_CASE("multiplicative identity and binomial squares") {
    QSeries a = from_ints({3, -1, 2, 5});
    QSeries one = QSeries::one(4);
    CHECK(mul(a, one).same_coefficients(a));
    CHECK(mul(a, one).prec() == 4);

    QSeries p = from_ints({1, 1, 0});
    QSeries sq = mul(p, p);
    CHECK(sq.coefficient(0) == Rational(1));
    CHECK(sq.coefficient(1) == Rational(2));
    CHECK(sq.coefficient(2) == Rational(1));
}

TEST_CASE("geometric series square counts pairs") {
    QSeries g = from_ints({1, 1, 1, 1});
    QSeries gg = mul(g, g);
    for (size_t n = 0; n < 4; ++n) CHECK(gg.coefficient(n) == Rational((long long)n + 1));
}

TEST_CASE("add, scale, sub basics") {
    QSeries a = from_ints({1, 1});
    QSeries b = from_ints({1, -1});
    QSeries s = add(a, b);
    CHECK(s.coefficient(0) == Rational(2));
    CHECK(s.coefficient(1) == Rational(0));
    CHECK(add(a, QSeries::zero(2)).same_coefficients(a));
    CHECK(scale(a, Rational(0)).same_coefficients(QSeries::zero(2)));
}

TEST_CASE("pow: unit, squares, 24th power prefix") {
    QSeries a = from_ints({5, 7, 1});
    CHECK(pow(a, 0).same_coefficients(QSeries::one(3)));
    QSeries omq = from_ints({1, -1, 0});
    QSeries sq = pow(omq, 2);
    CHECK(sq.coefficient(0) == Rational(1));
    CHECK(sq.coefficient(1) == Rational(-2));
    CHECK(sq.coefficient(2) == Rational(1));
    QSeries p24 = pow(omq, 24);
    CHECK(p24.coefficient(0) == Rational(1));
    CHECK(p24.coefficient(1) == Rational(-24));
    CHECK(p24.coefficient(2) == Rational(276));   // binom(24, 2)
}

TEST_CASE("coefficient out of precision is an error, not zero") {
    QSeries a = from_ints({1, 2});
    CHECK(a.coefficient(1) == Rational(2));
    CHECK_THROWS_AS(a.coefficient(2), PrecisionExceeded);
    CHECK_THROWS_AS(mul(QSeries(), a), InvalidArgument);
}

TEST_CASE("precision law: min of operand precisions") {
    oracles::Rng rng(11);
    for (int it = 0; it < 50; ++it) {
        size_t pa = static_cast<size_t>(rng.range(1, 40));
        size_t pb = static_cast<size_t>(rng.range(1, 40));
        QSeries a = random_series(rng, pa), b = random_series(rng, pb);
        CHECK(mul(a, b).prec() == std::min(pa, pb));
        CHECK(add(a, b).prec() == std::min(pa, pb));
    }
}

TEST_CASE("ring axioms on random series") {
    oracles::Rng rng(23);
    for (int it = 0; it < 30; ++it) {
        QSeries a = random_series(rng, 20), b = random_series(rng, 20), c = random_series(rng, 20);
        CHECK(mul(a, b).same_coefficients(mul(b, a)));
        CHECK(mul(mul(a, b), c).same_coefficients(mul(a, mul(b, c))));
        CHECK(mul(a, add(b, c)).same_coefficients(add(mul(a, b), mul(a, c))));
    }
}

TEST_CASE("mul agrees with the schoolbook oracle on random inputs") {
    oracles::Rng rng(37);
    for (int it = 0; it < 40; ++it) {
        size_t prec = static_cast<size_t>(rng.range(1, 64));
        QSeries a = random_series(rng, prec), b = random_series(rng, prec);
        CHECK(mul(a, b).same_coefficients(mul_schoolbook(a, b)));
    }
}

TEST_CASE("divide-and-conquer path matches schoolbook above the threshold") {
    oracles::Rng rng(53);
    size_t saved = QSeries::karatsuba_threshold;
    QSeries::karatsuba_threshold = 16;   // force the split path on small input
    QSeries a = random_series(rng, 70), b = random_series(rng, 70);
    QSeries fast = mul(a, b);
    CHECK(fast.same_coefficients(mul_schoolbook(a, b)));
    // mixed precisions through the split path
    for (int it = 0; it < 20; ++it) {
        size_t pa = static_cast<size_t>(rng.range(20, 90));
        size_t pb = static_cast<size_t>(rng.range(20, 90));
        QSeries u = random_series(rng, pa), v = random_series(rng, pb);
        CHECK(mul(u, v).same_coefficients(mul_schoolbook(u, v)));
    }
    QSeries::karatsuba_threshold = saved;

    // and at the default threshold with a genuinely long integer series
    std::vector<Rational> big(600);
    oracles::Rng rng2(54);
    for (auto& x : big) x = Rational(rng2.range(-50, 50));
    QSeries A(big), B(big);
    CHECK(mul(A, B).same_coefficients(mul_schoolbook(A, B)));
}

TEST_CASE("cusp tagging and metadata") {
    QSeries a = from_ints({0, 1, -24});
    a.set_meta(12, 1);
    CHECK(a.is_cuspidal());
    CHECK(a.weight() == 12);
    QSeries b = from_ints({1, 0});
    CHECK_FALSE(b.is_cuspidal());
}
