#pragma once

#include <cstddef>
#include <vector>

#include "sfcusp/rational.hpp"

namespace sfcusp {

// Truncated q-expansion with exact rational coefficients: coeffs[n] is the
// coefficient of q^n, 0 <= n < prec().  Arithmetic between two series
// truncates to the shorter precision; a too-long answer would be wrong, a
// shorter one is merely conservative.  Optional (weight, level) metadata tags
// series that are known to be modular forms.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}
    QSeries(std::vector<Rational> coeffs, int weight, long long level)
        : c_(std::move(coeffs)), weight_(weight), level_(level), has_meta_(true) {}

    static QSeries zero(size_t prec);
    static QSeries one(size_t prec);

    size_t prec() const { return c_.size(); }
    bool empty() const { return c_.empty(); }

    // coefficient of q^n; n >= prec() is a precision error, not a zero
    const Rational& coefficient(size_t n) const;
    Rational& at(size_t n) { return c_[n]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool has_meta() const { return has_meta_; }
    int weight() const { return weight_; }
    long long level() const { return level_; }
    QSeries& set_meta(int weight, long long level);

    bool is_cuspidal() const { return !c_.empty() && c_[0].is_zero(); }

    QSeries truncated(size_t new_prec) const;

    friend QSeries add(const QSeries& a, const QSeries& b);
    friend QSeries sub(const QSeries& a, const QSeries& b);
    friend QSeries scale(const QSeries& a, const Rational& c);
    friend QSeries mul(const QSeries& a, const QSeries& b);
    friend QSeries pow(const QSeries& a, unsigned long long e);

    // schoolbook convolution, also the oracle for the dispatching mul()
    friend QSeries mul_schoolbook(const QSeries& a, const QSeries& b);

    QSeries operator+(const QSeries& o) const { return add(*this, o); }
    QSeries operator-(const QSeries& o) const { return sub(*this, o); }
    QSeries operator*(const QSeries& o) const { return mul(*this, o); }

    bool same_coefficients(const QSeries& o) const { return c_ == o.c_; }

    // mul() switches to divide-and-conquer above this length
    static size_t karatsuba_threshold;

private:
    std::vector<Rational> c_;
    int weight_ = 0;
    long long level_ = 0;
    bool has_meta_ = false;
};

} // namespace sfcusp
