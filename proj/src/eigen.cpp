#include <algorithm>
#include <cmath>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/modforms.hpp"

// Hecke eigenbasis extraction: exact characteristic polynomials through
// Faddeev-LeVerrier, real root isolation through Sturm chains, rational roots
// handled by exact kernels, irrational ones by certified bisection down to
// width 1e-20 followed by a long-double kernel solve.

namespace sfcusp {
namespace modforms {

namespace {

using Poly = std::vector<Rational>;           // ascending, trimmed
using Matrix = std::vector<std::vector<Rational>>;

void trim(Poly& p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Rational eval(const Poly& p, const Rational& x) {
    Rational r(0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {Rational(0)};
    Poly d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rational(static_cast<long long>(i));
    return d;
}

bool is_zero_poly(const Poly& p) {
    return p.empty() || (p.size() == 1 && p[0].is_zero());
}

Poly poly_rem(Poly a, const Poly& b) {
    trim(a);
    while (!a.empty() && degree(a) >= degree(b) && !is_zero_poly(a)) {
        Rational f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    if (a.empty()) a.assign(1, Rational(0));
    return a;
}

// characteristic polynomial of A, monic, det(xI - A)
Poly charpoly(const Matrix& A) {
    const size_t n = A.size();
    Poly c(n + 1, Rational(0));
    c[n] = Rational(1);
    Matrix B(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) B[i][i] = Rational(1);
    for (size_t k = 1; k <= n; ++k) {
        // B <- A * B
        Matrix AB(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (A[i][l].is_zero()) continue;
                for (size_t j = 0; j < n; ++j) AB[i][j] += A[i][l] * B[l][j];
            }
        B = std::move(AB);
        Rational tr(0);
        for (size_t i = 0; i < n; ++i) tr += B[i][i];
        Rational ck = -(tr / Rational(static_cast<long long>(k)));
        c[n - k] = ck;
        for (size_t i = 0; i < n; ++i) B[i][i] += ck;
    }
    return c;
}

bool is_squarefree(const Poly& p) {
    Poly g1 = p, g2 = derivative(p);
    // euclidean gcd, degree only
    while (!is_zero_poly(g2)) {
        Poly r = poly_rem(g1, g2);
        g1 = std::move(g2);
        g2 = std::move(r);
    }
    return degree(g1) == 0;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain{p, derivative(p)};
    trim(chain[1]);
    while (degree(chain.back()) > 0) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        trim(r);
        if (r.size() == 1 && r[0].is_zero()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<Poly>& chain, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& p : chain) {
        int s = eval(p, x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

struct RootBox {
    Rational lo, hi;        // open-ish interval with exactly one root, or exact
    bool exact = false;
    Rational exact_value;
};

// all real roots of a squarefree polynomial
std::vector<RootBox> isolate_roots(const Poly& p) {
    std::vector<Poly> chain = sturm_chain(p);
    Rational bound(1);
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        Rational m = p[i] / p.back();
        if (m.sign() < 0) m = -m;
        if (m > bound) bound = m;
    }
    bound += Rational(1);
    std::vector<RootBox> out;
    struct Seg {
        Rational lo, hi;
        int nroots;
    };
    std::vector<Seg> work{{-bound, bound, 0}};
    work[0].nroots = sign_changes(chain, work[0].lo) - sign_changes(chain, work[0].hi);
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.nroots == 0) continue;
        Rational mid = (s.lo + s.hi) * Rational(BigInt(1), BigInt(2));
        if (eval(p, mid).is_zero()) {
            RootBox rb;
            rb.exact = true;
            rb.exact_value = mid;
            rb.lo = rb.hi = mid;
            out.push_back(rb);
            // exclude a margin around mid, shrinking it until the Sturm counts
            // confirm no other root was swallowed
            Rational eps = (s.hi - s.lo) * Rational(BigInt(1), BigInt(1u << 20));
            while (true) {
                Seg a{s.lo, mid - eps, 0}, b{mid + eps, s.hi, 0};
                a.nroots = sign_changes(chain, a.lo) - sign_changes(chain, a.hi);
                b.nroots = sign_changes(chain, b.lo) - sign_changes(chain, b.hi);
                if (a.nroots + 1 + b.nroots == s.nroots) {
                    work.push_back(a);
                    work.push_back(b);
                    break;
                }
                eps = eps * Rational(BigInt(1), BigInt(1u << 20));
            }
            continue;
        }
        if (s.nroots == 1) {
            out.push_back({s.lo, s.hi, false, Rational(0)});
            continue;
        }
        Seg a{s.lo, mid, 0}, b{mid, s.hi, 0};
        a.nroots = sign_changes(chain, a.lo) - sign_changes(chain, a.hi);
        b.nroots = s.nroots - a.nroots;
        work.push_back(a);
        work.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const RootBox& a, const RootBox& b) { return a.lo < b.lo; });
    return out;
}

// shrink a bracketing interval until hi - lo <= width
void refine(const Poly& p, Rational& lo, Rational& hi, const Rational& width) {
    int slo = eval(p, lo).sign();
    if (slo == 0) {
        hi = lo;
        return;
    }
    while (hi - lo > width) {
        Rational mid = (lo + hi) * Rational(BigInt(1), BigInt(2));
        int sm = eval(p, mid).sign();
        if (sm == 0) {
            lo = hi = mid;
            return;
        }
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
}

// detect an exact rational root inside a tight enclosure; Hecke eigenvalues
// are algebraic integers so integer candidates cover the practical cases, but
// small-denominator rationals are probed too
bool try_rational_root(const Poly& p, const RootBox& box, Rational& out) {
    if (box.exact) {
        out = box.exact_value;
        return true;
    }
    long double mid = ((box.lo + box.hi) * Rational(BigInt(1), BigInt(2))).to_long_double();
    long double rounded = roundl(mid);
    if (fabsl(rounded) < 9e18) {
        Rational cand(static_cast<long long>(rounded));
        if (eval(p, cand).is_zero() && cand >= box.lo && cand <= box.hi) {
            out = cand;
            return true;
        }
    }
    for (long long den = 2; den <= 64; ++den) {
        long double num = roundl(mid * static_cast<long double>(den));
        if (fabsl(num) >= 9e18) continue;
        Rational cand(BigInt(static_cast<long long>(num)), BigInt(den));
        if (eval(p, cand).is_zero() && cand >= box.lo && cand <= box.hi) {
            out = cand;
            return true;
        }
    }
    return false;
}

// exact kernel vector of (A - lambda I); requires one-dimensional kernel
std::vector<Rational> exact_kernel(Matrix M, const Rational& lambda) {
    const size_t n = M.size();
    for (size_t i = 0; i < n; ++i) M[i][i] -= lambda;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t sel = n;
        for (size_t i = row; i < n; ++i)
            if (!M[i][col].is_zero()) { sel = i; break; }
        if (sel == n) continue;
        std::swap(M[row], M[sel]);
        Rational inv = M[row][col].inverse();
        for (size_t j = col; j < n; ++j) M[row][j] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || M[i][col].is_zero()) continue;
            Rational f = M[i][col];
            for (size_t j = col; j < n; ++j) M[i][j] -= f * M[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() != n - 1)
        throw InternalInconsistency("exact_kernel: kernel dimension != 1");
    size_t free_col = 0;
    for (size_t c = 0; c < n; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) { free_col = c; break; }
    std::vector<Rational> v(n, Rational(0));
    v[free_col] = Rational(1);
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -M[r][free_col];
    return v;
}

// long-double kernel of (A - theta I) by full-pivot elimination
std::vector<long double> numeric_kernel(const Matrix& A, long double theta) {
    const size_t n = A.size();
    std::vector<std::vector<long double>> M(n, std::vector<long double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            M[i][j] = A[i][j].to_long_double() - (i == j ? theta : 0.0L);
    std::vector<size_t> col_of_row;
    std::vector<bool> used_col(n, false);
    for (size_t step = 0; step + 1 < n; ++step) {
        size_t bi = n, bj = n;
        long double best = 0.0L;
        for (size_t i = step; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (used_col[j]) continue;
                if (fabsl(M[i][j]) > best) { best = fabsl(M[i][j]); bi = i; bj = j; }
            }
        if (bi == n) break;
        std::swap(M[step], M[bi]);
        used_col[bj] = true;
        col_of_row.push_back(bj);
        for (size_t i = 0; i < n; ++i) {
            if (i == step || M[i][bj] == 0.0L) continue;
            long double f = M[i][bj] / M[step][bj];
            for (size_t j = 0; j < n; ++j) M[i][j] -= f * M[step][j];
        }
    }
    size_t free_col = 0;
    for (size_t c = 0; c < n; ++c)
        if (!used_col[c]) { free_col = c; break; }
    std::vector<long double> v(n, 0.0L);
    v[free_col] = 1.0L;
    for (size_t r = 0; r < col_of_row.size(); ++r)
        v[col_of_row[r]] = -M[r][free_col] / M[r][col_of_row[r]];
    return v;
}

} // namespace

std::vector<NewformRecord> eigenbasis(const FormSpace& space,
                                      const std::vector<uint64_t>& probe_primes) {
    const size_t ds = space.basis.size();
    if (ds == 0) return {};
    if (probe_primes.empty()) throw InvalidArgument("eigenbasis: need at least one probe prime");
    for (uint64_t p : probe_primes)
        if (space.level % p == 0)
            throw InvalidArgument("eigenbasis: probe prime " + std::to_string(p) +
                                  " divides the level");

    // find a probe (or combination of two) whose matrix has a squarefree
    // characteristic polynomial; its eigenvectors then diagonalize every
    // commuting Hecke operator at once
    Matrix A;
    Poly cp;
    bool found = false;
    std::vector<Matrix> probes;
    for (uint64_t p : probe_primes) {
        probes.push_back(hecke_matrix(space, p));
        cp = charpoly(probes.back());
        if (is_squarefree(cp)) {
            A = probes.back();
            found = true;
            break;
        }
    }
    if (!found && probes.size() >= 2) {
        for (long long t = 1; t <= 8 && !found; ++t) {
            Matrix C = probes[0];
            for (size_t i = 0; i < ds; ++i)
                for (size_t j = 0; j < ds; ++j) C[i][j] += Rational(t) * probes[1][i][j];
            cp = charpoly(C);
            if (is_squarefree(cp)) {
                A = std::move(C);
                found = true;
            }
        }
    }
    if (!found)
        throw NeedsMorePrimes("eigenbasis: probe primes do not split the space");

    std::vector<RootBox> roots = isolate_roots(cp);
    if (roots.size() != ds)
        throw NeedsMorePrimes("eigenbasis: characteristic polynomial has non-real roots");

    const Rational target_width(BigInt(1), BigInt::pow(BigInt(10), 20));
    std::vector<NewformRecord> out;
    const size_t prec = space.basis[0].prec();
    const long double half = (space.weight - 1) / 2.0L;

    for (RootBox& box : roots) {
        NewformRecord rec;
        rec.level = space.level;
        rec.weight = space.weight;
        rec.character = space.character;
        rec.source = NewformRecord::Source::computed;
        rec.name = "eigen-k" + std::to_string(space.weight) + "-N" + std::to_string(space.level);

        // shrink the enclosure enough for rational-root detection before
        // deciding which extraction path applies
        if (!box.exact) refine(cp, box.lo, box.hi, Rational(BigInt(1), BigInt(1LL << 50)));
        Rational rat_root;
        if (try_rational_root(cp, box, rat_root)) {
            std::vector<Rational> v = exact_kernel(A, rat_root);
            // pivot structure: coefficient of q^(i+1) of the eigenform is v[i];
            // normalize a(1) = 1
            if (v[0].is_zero())
                throw InternalInconsistency("eigenbasis: eigenvector with a(1) = 0");
            Rational inv = v[0].inverse();
            for (auto& c : v) c *= inv;
            std::vector<Rational> a(prec - 1, Rational(0));
            for (size_t i = 0; i < ds; ++i) {
                if (v[i].is_zero()) continue;
                for (size_t n = 1; n < prec; ++n)
                    a[n - 1] += v[i] * space.basis[i].coefficient(n);
            }
            bool integral = true;
            for (const auto& c : a)
                if (!c.is_integer()) { integral = false; break; }
            rec.lambda_values.resize(a.size());
            for (size_t n = 1; n <= a.size(); ++n)
                rec.lambda_values[n - 1] = static_cast<double>(
                    a[n - 1].to_long_double() / powl(static_cast<long double>(n), half));
            if (integral) {
                rec.integral_a.reserve(a.size());
                for (const auto& c : a) rec.integral_a.push_back(c.num());
            }
        } else {
            refine(cp, box.lo, box.hi, target_width);
            long double theta = ((box.lo + box.hi) * Rational(BigInt(1), BigInt(2))).to_long_double();
            std::vector<long double> v = numeric_kernel(A, theta);
            if (fabsl(v[0]) < 1e-12L)
                throw InternalInconsistency("eigenbasis: eigenvector with a(1) ~ 0");
            const long double v0 = v[0];
            for (auto& c : v) c /= v0;
            std::vector<long double> a(prec - 1, 0.0L);
            for (size_t i = 0; i < ds; ++i) {
                if (v[i] == 0.0L) continue;
                for (size_t n = 1; n < prec; ++n)
                    a[n - 1] += v[i] * space.basis[i].coefficient(n).to_long_double();
            }
            rec.lambda_values.resize(a.size());
            for (size_t n = 1; n <= a.size(); ++n)
                rec.lambda_values[n - 1] =
                    static_cast<double>(a[n - 1] / powl(static_cast<long double>(n), half));
        }
        out.push_back(std::move(rec));
    }
    // deterministic order: by lambda(2) ascending (real parts)
    std::sort(out.begin(), out.end(), [](const NewformRecord& x, const NewformRecord& y) {
        return x.lambda_values[1].real() < y.lambda_values[1].real();
    });
    return out;
}

} // namespace modforms
} // namespace sfcusp
