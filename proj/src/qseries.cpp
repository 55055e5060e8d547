#include "sfcusp/qseries.hpp"

#include <algorithm>

#include "sfcusp/errors.hpp"

namespace sfcusp {

size_t QSeries::karatsuba_threshold = 512;

QSeries QSeries::zero(size_t prec) {
    return QSeries(std::vector<Rational>(prec, Rational(0)));
}

QSeries QSeries::one(size_t prec) {
    std::vector<Rational> c(prec, Rational(0));
    if (prec > 0) c[0] = Rational(1);
    return QSeries(std::move(c));
}

const Rational& QSeries::coefficient(size_t n) const {
    if (n >= c_.size())
        throw PrecisionExceeded("QSeries: coefficient index " + std::to_string(n) +
                                " >= precision " + std::to_string(c_.size()));
    return c_[n];
}

QSeries& QSeries::set_meta(int weight, long long level) {
    weight_ = weight;
    level_ = level;
    has_meta_ = true;
    return *this;
}

QSeries QSeries::truncated(size_t new_prec) const {
    QSeries r = *this;
    if (new_prec < r.c_.size()) r.c_.resize(new_prec);
    return r;
}

namespace {

// metadata survives only when both operands agree on it
void merge_meta(QSeries& out, const QSeries& a, const QSeries& b, int weight_sum) {
    if (a.has_meta() && b.has_meta() && a.level() == b.level()) {
        if (weight_sum >= 0)
            out.set_meta(weight_sum, a.level());
        else if (a.weight() == b.weight())
            out.set_meta(a.weight(), a.level());
    }
}

// plain convolution of coefficient vectors, result length n (truncated)
std::vector<Rational> conv(const Rational* a, size_t na, const Rational* b, size_t nb, size_t n) {
    std::vector<Rational> r(n, Rational(0));
    for (size_t i = 0; i < na && i < n; ++i) {
        if (a[i].is_zero()) continue;
        size_t jmax = std::min(nb, n - i);
        for (size_t j = 0; j < jmax; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// Karatsuba on truncated inputs: splits at h, reuses the classic three-product
// recursion, keeps only the first n coefficients.  Rational adds are not free
// (gcds), so this only wins once the inputs are long; the dispatch threshold
// lives in QSeries::karatsuba_threshold.
std::vector<Rational> kara(const Rational* a, size_t na, const Rational* b, size_t nb, size_t n);

std::vector<Rational> mul_rec(const Rational* a, size_t na, const Rational* b, size_t nb, size_t n) {
    na = std::min(na, n);
    nb = std::min(nb, n);
    if (na == 0 || nb == 0) return std::vector<Rational>(n, Rational(0));
    if (std::min(na, nb) < QSeries::karatsuba_threshold / 2 || n < QSeries::karatsuba_threshold)
        return conv(a, na, b, nb, n);
    return kara(a, na, b, nb, n);
}

std::vector<Rational> kara(const Rational* a, size_t na, const Rational* b, size_t nb, size_t n) {
    size_t h = std::min(std::max(na, nb), n) / 2;
    if (h == 0 || h >= na || h >= nb) return conv(a, na, b, nb, n);
    // a = a0 + x^h a1, b = b0 + x^h b1
    const Rational* a0 = a;
    const Rational* b0 = b;
    const Rational* a1 = a + h;
    const Rational* b1 = b + h;
    size_t na1 = na - h, nb1 = nb - h;

    std::vector<Rational> z0 = mul_rec(a0, h, b0, h, std::min(n, 2 * h));
    // z2 feeds both the x^{2h} block and the middle-term subtraction, which
    // reads it up to index n - h - 1
    std::vector<Rational> z2 = (n > h) ? mul_rec(a1, na1, b1, nb1, n - h)
                                       : std::vector<Rational>();
    // (a0+a1)(b0+b1)
    std::vector<Rational> sa(std::max(h, na1), Rational(0));
    for (size_t i = 0; i < h; ++i) sa[i] = a0[i];
    for (size_t i = 0; i < na1; ++i) sa[i] += a1[i];
    std::vector<Rational> sb(std::max(h, nb1), Rational(0));
    for (size_t i = 0; i < h; ++i) sb[i] = b0[i];
    for (size_t i = 0; i < nb1; ++i) sb[i] += b1[i];
    std::vector<Rational> z1 = (n > h) ? mul_rec(sa.data(), sa.size(), sb.data(), sb.size(), n - h)
                                       : std::vector<Rational>();

    std::vector<Rational> r(n, Rational(0));
    for (size_t i = 0; i < z0.size(); ++i) r[i] = z0[i];
    for (size_t i = 0; i < z1.size() && i + h < n; ++i) {
        Rational m = z1[i];
        if (i < z0.size()) m -= z0[i];
        if (i < z2.size()) m -= z2[i];
        r[i + h] += m;
    }
    for (size_t i = 0; i < z2.size() && i + 2 * h < n; ++i) r[i + 2 * h] += z2[i];
    return r;
}

} // namespace

QSeries add(const QSeries& a, const QSeries& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("QSeries add: empty operand");
    size_t n = std::min(a.prec(), b.prec());
    std::vector<Rational> c(n);
    for (size_t i = 0; i < n; ++i) c[i] = a.c_[i] + b.c_[i];
    QSeries r(std::move(c));
    merge_meta(r, a, b, -1);
    return r;
}

QSeries sub(const QSeries& a, const QSeries& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("QSeries sub: empty operand");
    size_t n = std::min(a.prec(), b.prec());
    std::vector<Rational> c(n);
    for (size_t i = 0; i < n; ++i) c[i] = a.c_[i] - b.c_[i];
    QSeries r(std::move(c));
    merge_meta(r, a, b, -1);
    return r;
}

QSeries scale(const QSeries& a, const Rational& s) {
    if (a.empty()) throw InvalidArgument("QSeries scale: empty operand");
    std::vector<Rational> c(a.prec());
    for (size_t i = 0; i < a.prec(); ++i) c[i] = a.c_[i] * s;
    QSeries r(std::move(c));
    if (a.has_meta()) r.set_meta(a.weight(), a.level());
    return r;
}

QSeries mul_schoolbook(const QSeries& a, const QSeries& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("QSeries mul: empty operand");
    size_t n = std::min(a.prec(), b.prec());
    QSeries r(conv(a.c_.data(), a.prec(), b.c_.data(), b.prec(), n));
    merge_meta(r, a, b, a.weight() + b.weight());
    return r;
}

QSeries mul(const QSeries& a, const QSeries& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("QSeries mul: empty operand");
    size_t n = std::min(a.prec(), b.prec());
    QSeries r(mul_rec(a.c_.data(), a.prec(), b.c_.data(), b.prec(), n));
    merge_meta(r, a, b, a.weight() + b.weight());
    return r;
}

QSeries pow(const QSeries& a, unsigned long long e) {
    if (a.empty()) throw InvalidArgument("QSeries pow: empty operand");
    QSeries r = QSeries::one(a.prec());
    if (e == 0) return r;
    QSeries base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

} // namespace sfcusp
