#include "sfcusp/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "sfcusp/errors.hpp"

namespace sfcusp {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    // avoid UB on LLONG_MIN
    uint64_t m = v > 0 ? static_cast<uint64_t>(v) : ~static_cast<uint64_t>(v) + 1;
    while (m) {
        mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
        m >>= 32;
    }
}

BigInt::BigInt(const std::string& decimal) {
    size_t i = 0;
    int s = 1;
    if (i < decimal.size() && (decimal[i] == '+' || decimal[i] == '-')) {
        if (decimal[i] == '-') s = -1;
        ++i;
    }
    if (i == decimal.size()) throw InvalidArgument("BigInt: empty decimal string");
    BigInt acc;
    const BigInt ten9(1000000000LL);
    // consume 9 digits at a time
    while (i < decimal.size()) {
        size_t chunk = std::min<size_t>(9, decimal.size() - i);
        uint32_t v = 0;
        for (size_t j = 0; j < chunk; ++j) {
            char c = decimal[i + j];
            if (c < '0' || c > '9') throw InvalidArgument("BigInt: bad digit in \"" + decimal + "\"");
            v = v * 10 + static_cast<uint32_t>(c - '0');
        }
        BigInt scale = 1;
        for (size_t j = 0; j < chunk; ++j) scale *= BigInt(10);
        acc = acc * scale + BigInt(static_cast<long long>(v));
        i += chunk;
    }
    *this = acc;
    if (sign_ != 0) sign_ = s;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& lo = a.size() >= b.size() ? b : a;
    const std::vector<uint32_t>& hi = a.size() >= b.size() ? a : b;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r[i] = static_cast<uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (d < 0) {
            d += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + ai * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) { *this = o; return *this; }
    if (sign_ == o.sign_) {
        mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) { mag_.clear(); sign_ = 0; return *this; }
        if (c > 0) {
            mag_ = sub_mag(mag_, o.mag_);
        } else {
            mag_ = sub_mag(o.mag_, mag_);
            sign_ = o.sign_;
        }
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
    return *this += (-o);
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    r.sign_ = a.sign_ * b.sign_;
    r.trim();
    return r;
}

BigInt& BigInt::operator*=(const BigInt& o) {
    *this = *this * o;
    return *this;
}

void BigInt::shift_left_bits(unsigned bits) {
    if (sign_ == 0 || bits == 0) return;
    unsigned words = bits / 32, rem = bits % 32;
    std::vector<uint32_t> r(mag_.size() + words + 1, 0);
    for (size_t i = 0; i < mag_.size(); ++i) {
        uint64_t v = static_cast<uint64_t>(mag_[i]) << rem;
        r[i + words] |= static_cast<uint32_t>(v & 0xffffffffu);
        r[i + words + 1] |= static_cast<uint32_t>(v >> 32);
    }
    mag_ = std::move(r);
    trim();
}

void BigInt::shift_right_bits(unsigned bits) {
    if (sign_ == 0 || bits == 0) return;
    unsigned words = bits / 32, rem = bits % 32;
    if (words >= mag_.size()) { mag_.clear(); sign_ = 0; return; }
    std::vector<uint32_t> r(mag_.size() - words, 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t lo = mag_[i + words] >> rem;
        uint64_t hi = (rem && i + words + 1 < mag_.size())
                          ? (static_cast<uint64_t>(mag_[i + words + 1]) << (32 - rem))
                          : 0;
        r[i] = static_cast<uint32_t>((lo | hi) & 0xffffffffu);
    }
    mag_ = std::move(r);
    trim();
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_mag(std::vector<uint32_t> a, std::vector<uint32_t> b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (cmp_mag(a, b) < 0) { r = std::move(a); return; }
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }
    // normalize so the top limb of b has its high bit set
    unsigned shift = 0;
    for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    BigInt an, bn;
    an.mag_ = std::move(a); an.sign_ = 1; an.shift_left_bits(shift);
    bn.mag_ = std::move(b); bn.sign_ = 1; bn.shift_left_bits(shift);
    std::vector<uint32_t> u = std::move(an.mag_);
    const std::vector<uint32_t>& v = bn.mag_;
    const size_t n = v.size();
    const size_t m = u.size() - n;
    u.push_back(0);
    q.assign(m + 1, 0);
    const uint64_t vtop = v[n - 1], vnext = v[n - 2];
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = num / vtop;
        uint64_t rhat = num % vtop;
        if (qhat > 0xffffffffu) { qhat = 0xffffffffu; rhat = num - qhat * vtop; }
        while (rhat <= 0xffffffffu && qhat * vnext > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
        }
        // multiply-subtract qhat * v from u[j .. j+n]
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t d = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffu) - borrow;
            if (d < 0) { d += static_cast<int64_t>(kBase); borrow = 1; } else borrow = 0;
            u[i + j] = static_cast<uint32_t>(d);
        }
        int64_t d = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
        if (d < 0) {
            // qhat was one too large: add back
            d += static_cast<int64_t>(kBase);
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<uint32_t>(s & 0xffffffffu);
                c2 = s >> 32;
            }
            d += static_cast<int64_t>(c2);
            d &= 0xffffffff;
        }
        u[j + n] = static_cast<uint32_t>(d);
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    u.resize(n);
    BigInt rr;
    rr.mag_ = std::move(u);
    rr.sign_ = 1;
    rr.trim();
    rr.shift_right_bits(shift);
    r = std::move(rr.mag_);
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw InvalidArgument("BigInt: division by zero");
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.mag_ = std::move(rm);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    // binary gcd on magnitudes
    BigInt x = a, y = b;
    x.sign_ = x.mag_.empty() ? 0 : 1;
    y.sign_ = y.mag_.empty() ? 0 : 1;
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    unsigned common2 = 0;
    auto trailing_zero_bits = [](const BigInt& v) -> unsigned {
        unsigned n = 0;
        for (size_t i = 0; i < v.mag_.size(); ++i) {
            if (v.mag_[i] == 0) { n += 32; continue; }
            uint32_t w = v.mag_[i];
            while (!(w & 1)) { ++n; w >>= 1; }
            break;
        }
        return n;
    };
    unsigned tx = trailing_zero_bits(x), ty = trailing_zero_bits(y);
    common2 = std::min(tx, ty);
    x.shift_right_bits(tx);
    y.shift_right_bits(ty);
    while (true) {
        int c = cmp_mag(x.mag_, y.mag_);
        if (c == 0) break;
        if (c < 0) std::swap(x, y);
        x -= y;
        x.shift_right_bits(trailing_zero_bits(x));
    }
    x.shift_left_bits(0);
    BigInt g = x;
    g.shift_left_bits(common2);
    return g;
}

BigInt BigInt::pow(BigInt base, unsigned long long e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int c = cmp_mag(mag_, o.mag_);
    if (sign_ >= 0) return c <=> 0;
    return 0 <=> c;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    uint64_t m = 0;
    for (size_t i = 0; i < mag_.size(); ++i) m |= static_cast<uint64_t>(mag_[i]) << (32 * i);
    if (sign_ >= 0) return m <= 0x7fffffffffffffffull;
    return m <= 0x8000000000000000ull;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw InvalidArgument("BigInt: does not fit in int64");
    uint64_t m = 0;
    for (size_t i = 0; i < mag_.size(); ++i) m |= static_cast<uint64_t>(mag_[i]) << (32 * i);
    if (sign_ >= 0) return static_cast<long long>(m);
    return -static_cast<long long>(m - 1) - 1;
}

double BigInt::to_double() const {
    return static_cast<double>(to_long_double());
}

long double BigInt::to_long_double() const {
    long double v = 0.0L;
    for (size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0L + mag_[i];
    return sign_ < 0 ? -v : v;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> chunks;   // base 1e9, little-endian
    std::vector<uint32_t> cur = mag_;
    while (!cur.empty()) {
        uint64_t rem = 0;
        for (size_t i = cur.size(); i-- > 0;) {
            uint64_t x = (rem << 32) | cur[i];
            cur[i] = static_cast<uint32_t>(x / 1000000000u);
            rem = x % 1000000000u;
        }
        while (!cur.empty() && cur.back() == 0) cur.pop_back();
        chunks.push_back(static_cast<uint32_t>(rem));
    }
    std::string s = sign_ < 0 ? "-" : "";
    s += std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    uint32_t top = mag_.back();
    size_t bits = (mag_.size() - 1) * 32;
    while (top) { ++bits; top >>= 1; }
    return bits;
}

} // namespace sfcusp
