#pragma once

#include <string>

#include "sfcusp/bigint.hpp"

namespace sfcusp {

// Exact rational number.  Always normalized: den > 0, gcd(num, den) = 1,
// zero is 0/1.  Integer-valued operands (den == 1) skip the gcd work, which
// is the common case throughout the q-expansion pipelines.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}            // NOLINT: implicit by design
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}    // NOLINT: implicit by design
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const;
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    Rational inverse() const;
    static Rational pow(const Rational& base, long long e);

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    double to_double() const;
    long double to_long_double() const;
    std::string to_string() const;   // "p" or "p/q"

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

} // namespace sfcusp
