#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/weights.hpp"

using namespace sfcusp;
using namespace sfcusp::weights;

TEST_CASE("bump support and midpoint value") {
    SmoothWeight w;
    CHECK(bump(0.4, w) == 0.0);
    CHECK(bump(0.5, w) == 0.0);
    CHECK(bump(1.0, w) == 0.0);
    CHECK(bump(1.7, w) == 0.0);
    // midpoint: (y - 1/2)(1 - y) = 1/16, normalization exp(16) makes it 1
    CHECK(bump(0.75, w) == doctest::Approx(1.0).epsilon(1e-14));
    // generic interior value against the closed form
    double y = 0.6;
    CHECK(bump(y, w) ==
          doctest::Approx(std::exp(16.0) * std::exp(-1.0 / ((y - 0.5) * (1.0 - y)))));
    // clamped variant: 0 <= omega <= 1 on a grid
    for (int i = 0; i <= 10000; ++i) {
        double yy = static_cast<double>(i) / 10000.0 * 1.6;
        double v = bump(yy, w);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
        if (yy <= 0.5 || yy >= 1.0) CHECK(v == 0.0);
    }
    SmoothWeight exotic;
    exotic.family = "sinc";
    CHECK_THROWS_AS(bump(0.75, exotic), InvalidArgument);
}

TEST_CASE("bump is smooth at the support endpoints") {
    SmoothWeight w;
    // symmetric finite differences of orders 1..4 vanish as the step shrinks
    for (double y0 : {0.5, 1.0}) {
        double prev = 1e300;
        for (double h : {1e-2, 1e-3}) {
            double d4 = (bump(y0 + 2 * h, w) - 4 * bump(y0 + h, w) + 6 * bump(y0, w) -
                         4 * bump(y0 - h, w) + bump(y0 - 2 * h, w)) /
                        (h * h * h * h);
            CHECK(std::abs(d4) < prev + 1.0);
            prev = std::abs(d4);
        }
        CHECK(prev < 1e-6);
    }
}

TEST_CASE("mellin at real s is real and positive at s = 1") {
    SmoothWeight w;
    MellinValue m1 = mellin(w, {1.0, 0.0});
    CHECK(m1.value.real() > 0.0);
    CHECK(std::abs(m1.value.imag()) < 1e-14);
    MellinValue m3 = mellin(w, {3.0, 0.0});
    CHECK(std::abs(m3.value.imag()) < 1e-14);
}

TEST_CASE("mellin against the Riemann-sum oracle at s = 2") {
    SmoothWeight w;
    MellinValue m = mellin(w, {2.0, 0.0});
    auto oracle = oracles::mellin_riemann(w.beta, w.normalization(), {2.0, 0.0}, 1000000);
    CHECK(std::abs(m.value - oracle) < 1e-8);
    // and off the real axis
    MellinValue mc = mellin(w, {2.0, 5.0});
    auto oc = oracles::mellin_riemann(w.beta, w.normalization(), {2.0, 5.0}, 1000000);
    CHECK(std::abs(mc.value - oc) < 1e-8);
}

TEST_CASE("Schwarz reflection") {
    SmoothWeight w;
    for (double t : {0.7, 3.0, 17.0}) {
        MellinValue up = mellin(w, {1.5, t});
        MellinValue dn = mellin(w, {1.5, -t});
        CHECK(std::abs(dn.value - std::conj(up.value)) < 1e-12);
    }
}

TEST_CASE("error estimate bounds successive refinements") {
    SmoothWeight coarse;
    coarse.quad_tol = 1e-6;
    SmoothWeight fine;
    fine.quad_tol = 1e-12;
    for (double t : {0.0, 10.0}) {
        MellinValue a = mellin(coarse, {2.0, t});
        MellinValue b = mellin(fine, {2.0, t});
        CHECK(std::abs(a.value - b.value) <= a.error_estimate + 1e-12);
    }
}

TEST_CASE("quadrature failure is loud when the budget cannot reach tolerance") {
    SmoothWeight starved;
    starved.quad_tol = 1e-16;
    starved.quad_budget = 6;
    CHECK_THROWS_AS(mellin(starved, {2.0, 150.0}), QuadratureFailure);
}

TEST_CASE("oscillatory heights stay accurate") {
    SmoothWeight w;
    // |Im s| > 200 switches to oscillation-aware subdivision
    MellinValue m = mellin(w, {2.0, 240.0});
    auto oracle = oracles::mellin_riemann(w.beta, w.normalization(), {2.0, 240.0}, 2000000);
    CHECK(std::abs(m.value - oracle) < 1e-7);
}

TEST_CASE("decay check at A = 1") {
    SmoothWeight w;
    DecayReport rep = decay_check(w, 1.0, {10.0, 20.0, 40.0, 80.0});
    CHECK(rep.passes);
    CHECK(rep.empirical_exponent <= -1.75);

    // rescaling the weight leaves the exponent unchanged
    SmoothWeight w2 = w;
    w2.norm = 2.0 * w.normalization();
    DecayReport rep2 = decay_check(w2, 1.0, {10.0, 20.0, 40.0, 80.0});
    CHECK(rep2.empirical_exponent == doctest::Approx(rep.empirical_exponent).epsilon(1e-9));

    CHECK_THROWS_AS(decay_check(w, 1.0, {10.0, 20.0}), InvalidArgument);
    CHECK_THROWS_AS(decay_check(w, 1.0, {10.0, 5.0, 20.0}), InvalidArgument);
}

TEST_CASE("vertical tail sums shrink as the truncation grows") {
    SmoothWeight w;
    // sum of |omega~(1.5 + it)| over a fixed grid beyond T decreases in T
    auto tail = [&](double T) {
        double s = 0.0;
        for (double t = T; t < 120.0; t += 2.0) s += std::abs(mellin(w, {1.5, t}).value);
        return s;
    };
    double t20 = tail(20), t40 = tail(40), t80 = tail(80);
    CHECK(t40 < t20);
    CHECK(t80 < t40);
}
