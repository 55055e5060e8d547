#include "sfcusp/rational.hpp"

#include "sfcusp/errors.hpp"

namespace sfcusp {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw InvalidArgument("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    if (den_ == BigInt(1)) return;
    BigInt g = BigInt::gcd(num_, den_);
    if (g == BigInt(1)) return;
    num_ = num_ / g;
    den_ = den_ / g;
}

bool Rational::is_integer() const { return den_ == BigInt(1); }

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (is_integer() && o.is_integer()) {
        num_ += o.num_;
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (is_integer() && o.is_integer()) {
        num_ -= o.num_;
        return *this;
    }
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (is_integer() && o.is_integer()) {
        num_ *= o.num_;
        return *this;
    }
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidArgument("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw InvalidArgument("Rational: inverse of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(const Rational& base, long long e) {
    if (e < 0) return pow(base.inverse(), -e);
    Rational r(1);
    Rational b = base;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    // cross-multiply; denominators are positive
    return (num_ * o.den_) <=> (o.num_ * den_);
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

long double Rational::to_long_double() const {
    return num_.to_long_double() / den_.to_long_double();
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

} // namespace sfcusp
