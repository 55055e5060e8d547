#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sfcusp {

// Arbitrary-precision signed integer.  Magnitude is a little-endian vector of
// 32-bit limbs with no leading zeros; zero is the empty vector with sign 0.
// The coefficient sizes in this project stay below ~100 decimal digits, so
// schoolbook multiplication and Knuth-D division are the right tools.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);                    // NOLINT: implicit by design
    explicit BigInt(const std::string& decimal);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;

    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // Truncated division: q rounds toward zero, r has the sign of a,
    // a == q*b + r and |r| < |b|.  b == 0 throws InvalidArgument.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;

    static BigInt gcd(const BigInt& a, const BigInt& b);   // nonnegative
    static BigInt pow(BigInt base, unsigned long long e);

    bool operator==(const BigInt& o) const = default;
    std::strong_ordering operator<=>(const BigInt& o) const;

    bool fits_int64() const;
    long long to_int64() const;             // throws if it does not fit
    double to_double() const;
    long double to_long_double() const;
    std::string to_string() const;

    size_t limbs() const { return mag_.size(); }
    size_t bit_length() const;
    bool is_odd() const { return !mag_.empty() && (mag_[0] & 1u); }

private:
    std::vector<uint32_t> mag_;
    int sign_ = 0;

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(std::vector<uint32_t> a, std::vector<uint32_t> b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    void shift_right_bits(unsigned bits);
    void shift_left_bits(unsigned bits);
};

} // namespace sfcusp
