#include "sfcusp/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/etaseries.hpp"

namespace sfcusp {
namespace modforms {

cplx NewformRecord::lambda(uint64_t n) const {
    if (n == 0 || n > lambda_values.size())
        throw PrecisionExceeded("NewformRecord: lambda(" + std::to_string(n) +
                                ") beyond precision " + std::to_string(lambda_values.size()));
    return lambda_values[n - 1];
}

std::vector<cplx> lambda_normalize(const std::vector<BigInt>& a, int weight) {
    std::vector<cplx> lam(a.size());
    const long double half = (weight - 1) / 2.0L;
    for (size_t i = 0; i < a.size(); ++i) {
        long double nn = static_cast<long double>(i + 1);
        lam[i] = static_cast<double>(a[i].to_long_double() / powl(nn, half));
    }
    return lam;
}

std::vector<cplx> lambda_normalize(const std::vector<double>& a, int weight) {
    std::vector<cplx> lam(a.size());
    const long double half = (weight - 1) / 2.0L;
    for (size_t i = 0; i < a.size(); ++i)
        lam[i] = static_cast<double>(static_cast<long double>(a[i]) / powl(static_cast<long double>(i + 1), half));
    return lam;
}

QSeries eisenstein(int k, size_t prec) {
    if (k != 4 && k != 6) throw InvalidArgument("eisenstein: only k = 4 and k = 6 are generators here");
    if (prec == 0) throw InvalidArgument("eisenstein: prec must be >= 1");
    // -2k/B_k: B_4 = -1/30, B_6 = 1/42
    const long long c = (k == 4) ? 240 : -504;
    const unsigned w = static_cast<unsigned>(k - 1);
    std::vector<Rational> coef(prec, Rational(0));
    coef[0] = Rational(1);
    // sigma_w by sieving multiples of each d
    std::vector<BigInt> sig(prec, BigInt(0));
    for (size_t d = 1; d < prec; ++d) {
        BigInt dw = BigInt::pow(BigInt(static_cast<long long>(d)), w);
        for (size_t n = d; n < prec; n += d) sig[n] += dw;
    }
    for (size_t n = 1; n < prec; ++n) coef[n] = Rational(BigInt(c) * sig[n]);
    QSeries r(std::move(coef));
    r.set_meta(k, 1);
    return r;
}

namespace {

// multiply acc by prod_{n>=1} (1 - q^{d n})^e in place, via the sparse cube
// and pentagonal expansions; e may be negative (series division)
void apply_euler_power_exact(std::vector<Rational>& acc, uint64_t d, long long e) {
    const size_t prec = acc.size();
    if (e == 0 || prec == 0) return;
    const bool invert = e < 0;
    unsigned long long m = invert ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    eta::SparseSeries cube = eta::dilate(eta::cube_sparse(prec), d, prec);
    eta::SparseSeries single = eta::dilate(eta::euler_product_sparse(prec), d, prec);
    std::vector<Rational> tmp;
    for (unsigned long long c = m / 3; c > 0; --c) {
        if (invert) {
            eta::div_sparse(acc, cube);
        } else {
            eta::mul_sparse(tmp, acc, cube);
            acc.swap(tmp);
        }
    }
    for (unsigned long long s = m % 3; s > 0; --s) {
        if (invert) {
            eta::div_sparse(acc, single);
        } else {
            eta::mul_sparse(tmp, acc, single);
            acc.swap(tmp);
        }
    }
}

} // namespace

QSeries eta_quotient(const std::vector<std::pair<uint64_t, int>>& spec,
                     uint64_t N, int k, size_t prec) {
    if (spec.empty()) throw InvalidArgument("eta_quotient: empty spec");
    long long lead24 = 0, rsum = 0;
    for (const auto& [d, r] : spec) {
        if (d == 0) throw InvalidArgument("eta_quotient: zero divisor in spec");
        lead24 += static_cast<long long>(d) * r;
        rsum += r;
    }
    if (lead24 % 24 != 0 || lead24 < 0)
        throw InvalidArgument("eta_quotient: leading exponent sum(r_d * d)/24 = " +
                              std::to_string(lead24) + "/24 is not a nonnegative integer");
    if (rsum != 2LL * k)
        throw InvalidArgument("eta_quotient: sum of exponents " + std::to_string(rsum) +
                              " does not match weight " + std::to_string(k));
    const uint64_t lead = static_cast<uint64_t>(lead24 / 24);
    std::vector<Rational> coef(prec, Rational(0));
    if (lead >= prec) return QSeries(std::move(coef), k, static_cast<long long>(N));
    const size_t body = prec - lead;
    std::vector<Rational> acc(body, Rational(0));
    acc[0] = Rational(1);
    for (const auto& [d, r] : spec) apply_euler_power_exact(acc, d, r);
    for (size_t i = 0; i < body; ++i) coef[i + lead] = std::move(acc[i]);
    return QSeries(std::move(coef), k, static_cast<long long>(N));
}

QSeries delta(size_t prec) {
    if (prec < 2) throw InvalidArgument("delta: prec must be >= 2");
    return eta_quotient({{1, 24}}, 1, 12, prec);
}

FormSpace level1_basis(int k, size_t prec) {
    FormSpace sp;
    sp.weight = k;
    sp.level = 1;
    sp.character = CharacterTable::trivial(1);
    if (k < 0 || k % 2 != 0) return sp;
    if (prec == 0) throw InvalidArgument("level1_basis: prec must be >= 1");
    // monomials E4^a E6^b with 4a + 6b = k
    std::vector<QSeries> mons;
    if (k == 0) {
        mons.push_back(QSeries::one(prec).set_meta(0, 1));
    } else {
        QSeries e4 = eisenstein(4, prec);
        QSeries e6 = eisenstein(6, prec);
        for (int b = 0; 6 * b <= k; ++b) {
            if ((k - 6 * b) % 4 != 0) continue;
            int a = (k - 6 * b) / 4;
            QSeries m = pow(e4, static_cast<unsigned long long>(a)) *
                        pow(e6, static_cast<unsigned long long>(b));
            m.set_meta(k, 1);
            mons.push_back(std::move(m));
        }
    }
    if (mons.empty()) return sp;
    // Gauss-Jordan to reduced column echelon: pivots land at q^0 .. q^(dim-1)
    size_t rows = mons.size();
    size_t piv_col = 0;
    std::vector<size_t> pivots;
    for (size_t r = 0; r < rows && piv_col < prec; ++piv_col) {
        size_t sel = rows;
        for (size_t i = r; i < rows; ++i)
            if (!mons[i].coefficient(piv_col).is_zero()) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(mons[r], mons[sel]);
        mons[r] = scale(mons[r], mons[r].coefficient(piv_col).inverse());
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Rational& c = mons[i].coefficient(piv_col);
            if (!c.is_zero()) mons[i] = sub(mons[i], scale(mons[r], c));
        }
        pivots.push_back(piv_col);
        ++r;
    }
    for (size_t i = 0; i < pivots.size(); ++i) {
        sp.modular_basis.push_back(mons[i]);
        if (pivots[i] >= 1) sp.basis.push_back(mons[i]);
    }
    return sp;
}

QSeries hecke(const QSeries& f, uint64_t p, int k, uint64_t N, const CharacterTable& chi) {
    if (p < 2) throw InvalidArgument("hecke: p must be prime");
    const size_t out_prec = f.prec() / p;
    if (out_prec == 0)
        throw PrecisionExceeded("hecke: precision " + std::to_string(f.prec()) +
                                " too small for T_" + std::to_string(p));
    const bool good = (N % p != 0);
    Rational chip(0);
    if (good) {
        if (!chi.is_real)
            throw InvalidArgument("hecke: exact path requires a real character");
        chip = Rational(chi.real_value(p));
    }
    const Rational pk = Rational(BigInt::pow(BigInt(static_cast<long long>(p)),
                                             static_cast<unsigned>(k - 1)));
    std::vector<Rational> out(out_prec, Rational(0));
    for (size_t n = 0; n < out_prec; ++n) {
        Rational v = f.coefficient(n * p);
        if (good && n % p == 0 && !chip.is_zero())
            v += chip * pk * f.coefficient(n / p);
        out[n] = std::move(v);
    }
    QSeries r(std::move(out));
    if (f.has_meta()) r.set_meta(f.weight(), f.level());
    return r;
}

QSeries degenerate_lift(const QSeries& f, uint64_t delta, size_t prec) {
    if (delta == 0) throw InvalidArgument("degenerate_lift: delta must be >= 1");
    std::vector<Rational> out(prec, Rational(0));
    for (size_t n = 0; n < prec; ++n) {
        if (n % delta != 0) continue;
        size_t m = n / delta;
        if (m < f.prec()) out[n] = f.coefficient(m);
    }
    QSeries r(std::move(out));
    if (f.has_meta()) r.set_meta(f.weight(), f.level() * static_cast<long long>(delta));
    return r;
}

std::vector<cplx> degenerate_lift(const NewformRecord& f, uint64_t delta, size_t prec) {
    if (delta == 0) throw InvalidArgument("degenerate_lift: delta must be >= 1");
    // plain Fourier coefficients of f(delta tau): b(n) = a(n/delta)
    const long double half = (f.weight - 1) / 2.0L;
    std::vector<cplx> out(prec, cplx(0.0));
    for (size_t n = 1; n <= prec; ++n) {
        if (n % delta != 0) continue;
        uint64_t m = n / delta;
        if (m >= 1 && m <= f.prec()) {
            long double scale = powl(static_cast<long double>(m), half);
            out[n - 1] = f.lambda_values[m - 1] * static_cast<double>(scale);
        }
    }
    return out;
}

std::vector<std::vector<Rational>> hecke_matrix(const FormSpace& space, uint64_t p) {
    const size_t ds = space.basis.size();
    std::vector<std::vector<Rational>> M(ds, std::vector<Rational>(ds, Rational(0)));
    for (size_t j = 0; j < ds; ++j) {
        QSeries tp = hecke(space.basis[j], p, space.weight, space.level, space.character);
        if (tp.prec() < ds + 1)
            throw PrecisionExceeded("hecke_matrix: basis precision too small for T_" + std::to_string(p));
        // reduced echelon pivots at q^1..q^ds make coordinates plain reads
        for (size_t i = 0; i < ds; ++i) M[i][j] = tp.coefficient(i + 1);
    }
    return M;
}

// ---------------------------------------------------------------------------
// large tables via the eta power chain
// ---------------------------------------------------------------------------

namespace {

struct ChainTables {
    uint64_t prec24 = 0;        // coefficients of prod(1-q^n)^24, indices 0..prec24-1
    uint64_t prec48 = 0;
    std::vector<double> p24;
    std::vector<double> p48;
};

// process-wide cache: the chains are expensive at prec ~ 10^6 and several
// operations want the same tables
ChainTables& chain_cache(uint64_t need24, uint64_t need48) {
    static ChainTables tables;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (tables.prec24 < need24 || tables.prec48 < need48) {
        uint64_t n24 = std::max(need24, tables.prec24);
        uint64_t n48 = std::max(need48, tables.prec48);
        n24 = std::max(n24, n48);
        const eta::SparseSeries cube = eta::cube_sparse(n24);
        std::vector<double> acc(n24, 0.0), tmp;
        for (const auto& [e, c] : cube.terms) acc[e] = static_cast<double>(c);
        for (int step = 1; step < 8; ++step) {
            eta::mul_sparse_fast(tmp, acc, cube);
            acc.swap(tmp);
        }
        tables.p24 = acc;
        tables.prec24 = n24;
        if (n48 > 0) {
            for (int step = 0; step < 8; ++step) {
                eta::mul_sparse_fast(tmp, acc, cube);
                acc.swap(tmp);
            }
            if (acc.size() > n48) acc.resize(n48);
            tables.p48 = std::move(acc);
            tables.prec48 = n48;
        }
    }
    return tables;
}

} // namespace

std::vector<double> delta_coefficient_table(uint64_t n_max) {
    if (n_max == 0) throw InvalidArgument("delta_coefficient_table: n_max must be >= 1");
    ChainTables& t = chain_cache(n_max, 0);
    std::vector<double> tau(n_max);
    for (uint64_t n = 1; n <= n_max; ++n) tau[n - 1] = t.p24[n - 1];
    return tau;
}

NewformRecord level1_newform(int k, size_t prec) {
    static const std::map<int, std::pair<int, int>> extra = {
        {12, {0, 0}}, {16, {1, 0}}, {18, {0, 1}}, {20, {2, 0}}, {22, {1, 1}}, {26, {2, 1}}};
    auto it = extra.find(k);
    if (it == extra.end())
        throw InvalidArgument("level1_newform: weight " + std::to_string(k) +
                              " is not a one-dimensional level-1 cusp space");
    NewformRecord rec;
    rec.level = 1;
    rec.weight = k;
    rec.character = CharacterTable::trivial(1);
    rec.source = NewformRecord::Source::computed;
    rec.name = "level1-k" + std::to_string(k);
    if (k == 12) {
        std::vector<double> tau = delta_coefficient_table(prec);
        rec.lambda_values = lambda_normalize(tau, k);
        // exact coefficients up to a modest bound for the exact pipelines
        size_t ex = std::min<size_t>(prec, 3000);
        QSeries d = delta(ex + 1);
        rec.integral_a.reserve(ex);
        for (size_t n = 1; n <= ex; ++n) rec.integral_a.push_back(d.coefficient(n).num());
        return rec;
    }
    // unique newform = Delta * E4^a * E6^b, exact
    auto [a4, b6] = it->second;
    QSeries f = delta(prec + 1);
    if (a4 || b6) {
        QSeries e = pow(eisenstein(4, prec + 1), static_cast<unsigned long long>(a4)) *
                    pow(eisenstein(6, prec + 1), static_cast<unsigned long long>(b6));
        f = f * e;
    }
    std::vector<BigInt> av;
    av.reserve(prec);
    for (size_t n = 1; n <= prec; ++n) av.push_back(f.coefficient(n).num());
    rec.integral_a = std::move(av);
    rec.lambda_values = lambda_normalize(rec.integral_a, k);
    return rec;
}

std::pair<NewformRecord, NewformRecord> weight24_newforms(size_t prec) {
    if (prec < 4) throw InvalidArgument("weight24_newforms: prec must be >= 4");
    // Exact T_2 data on the basis {u, v} = {Delta^2, T_2 Delta^2}:
    //   u(n) = sum_{i+j=n} tau(i) tau(j),  v(n) = u(2n) + 2^23 u(n/2)
    //   T_2 v = alpha u + beta v with beta = v(2), alpha = v(4) + 2^23 - v(2)^2
    QSeries d = delta(10);
    long long tau[10] = {0};
    for (size_t n = 1; n <= 9; ++n) tau[n] = d.coefficient(n).num().to_int64();
    auto u_small = [&](int n) -> long long {
        long long s = 0;
        for (int i = 1; i < n; ++i) s += tau[i] * tau[n - i];
        return s;
    };
    const long long two23 = 1LL << 23;
    const long long beta = u_small(4);                                     // v(2)
    const long long v4 = u_small(8) + two23 * u_small(2);                  // v(4)
    const long long alpha = v4 + two23 - beta * beta;
    const long double disc = static_cast<long double>(beta) * beta + 4.0L * alpha;
    const long double root = sqrtl(disc);
    const long double theta_f = (beta + root) / 2.0L;
    const long double theta_g = (beta - root) / 2.0L;

    ChainTables& t = chain_cache(0, 2 * prec - 1);
    auto u_at = [&](uint64_t n) -> double {
        return (n >= 2 && n - 2 < t.p48.size()) ? t.p48[n - 2] : 0.0;
    };
    auto make = [&](long double theta, const char* name) {
        NewformRecord rec;
        rec.level = 1;
        rec.weight = 24;
        rec.character = CharacterTable::trivial(1);
        rec.source = NewformRecord::Source::computed;
        rec.name = name;
        const long double w = static_cast<long double>(alpha) / theta;
        std::vector<double> a(prec);
        for (uint64_t n = 1; n <= prec; ++n) {
            long double un = u_at(n);
            long double vn = u_at(2 * n) + (n % 2 == 0 ? static_cast<long double>(two23) * u_at(n / 2) : 0.0L);
            a[n - 1] = static_cast<double>(w * un + vn);
        }
        rec.lambda_values = lambda_normalize(a, 24);
        return rec;
    };
    NewformRecord f = make(theta_f, "level1-k24-a");
    NewformRecord g = make(theta_g, "level1-k24-b");
    return {std::move(f), std::move(g)};
}

bool has_builtin_eta_newform(uint64_t N) {
    return N == 2 || N == 3 || N == 5 || N == 11;
}

NewformRecord builtin_eta_newform(uint64_t N, size_t prec) {
    if (!has_builtin_eta_newform(N))
        throw InvalidArgument("builtin_eta_newform: no built-in newform at level " + std::to_string(N));
    const int r = static_cast<int>(24 / (N + 1));
    const int k = r;
    NewformRecord rec;
    rec.level = N;
    rec.weight = k;
    rec.character = CharacterTable::trivial(N);
    rec.source = NewformRecord::Source::computed;
    rec.name = "eta-N" + std::to_string(N) + "k" + std::to_string(k);

    // fast double expansion: q * prod(1-q^n)^r * prod(1-q^(Nn))^r
    std::vector<double> acc = eta::euler_power_fast(static_cast<unsigned>(r), prec);
    {
        const eta::SparseSeries cube = eta::dilate(eta::cube_sparse(prec), N, prec);
        const eta::SparseSeries single = eta::dilate(eta::euler_product_sparse(prec), N, prec);
        std::vector<double> tmp;
        for (int c = r / 3; c > 0; --c) {
            eta::mul_sparse_fast(tmp, acc, cube);
            acc.swap(tmp);
        }
        for (int s = r % 3; s > 0; --s) {
            eta::mul_sparse_fast(tmp, acc, single);
            acc.swap(tmp);
        }
    }
    std::vector<double> a(prec, 0.0);
    for (size_t n = 1; n <= prec; ++n) a[n - 1] = acc[n - 1];   // leading q shifts by one
    rec.lambda_values = lambda_normalize(a, k);

    // exact coefficients for the exact pipelines at moderate length
    size_t ex = std::min<size_t>(prec, 2000);
    QSeries e = eta_quotient({{1, r}, {N, r}}, N, k, ex + 1);
    rec.integral_a.reserve(ex);
    for (size_t n = 1; n <= ex; ++n) rec.integral_a.push_back(e.coefficient(n).num());
    return rec;
}

} // namespace modforms
} // namespace sfcusp
