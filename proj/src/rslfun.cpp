#include "sfcusp/rslfun.hpp"

#include <algorithm>
#include <cmath>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"

namespace sfcusp {
namespace rslfun {

SatakePair satake(cplx lambda_p, cplx chi_p, uint64_t p) {
    // roots of x^2 - lambda x + chi
    cplx disc = std::sqrt(lambda_p * lambda_p - 4.0 * chi_p);
    cplx r1 = (lambda_p + disc) * 0.5;
    cplx r2 = (lambda_p - disc) * 0.5;
    if (r2.real() < r1.real() || (r2.real() == r1.real() && r2.imag() < r1.imag()))
        std::swap(r1, r2);
    return {p, r1, r2};
}

std::pair<RationalComplex, RationalComplex> unitary_satake_exact(const Rational& t) {
    Rational t2 = t * t;
    Rational den = Rational(1) + t2;
    Rational re = (Rational(1) - t2) / den;
    Rational im = (Rational(2) * t) / den;
    RationalComplex a(re, im);
    return {a, a.conj()};
}

WeightedSumResult direct_weighted_sum(const NewformRecord& f, const NewformRecord& g,
                                      const weights::SmoothWeight& w, double x, uint64_t N) {
    if (x < 2.0) throw InvalidArgument("direct_weighted_sum: x must be >= 2");
    const uint64_t hi = static_cast<uint64_t>(std::ceil(x));
    const uint64_t need = hi > 1 ? hi - 1 : 1;
    if (f.prec() < need || g.prec() < need)
        throw PrecisionExceeded("direct_weighted_sum: records need lambda up to " +
                                std::to_string(need));
    arith::SquarefreeTable sf = arith::squarefree_sieve(need);
    WeightedSumResult res;
    res.x = x;
    res.method = WeightedSumResult::Method::direct;
    cplx acc(0.0);
    uint64_t lo = static_cast<uint64_t>(std::floor(x / 2.0));
    for (uint64_t n = lo; n < hi && n <= need; ++n) {
        if (n == 0 || 2.0 * static_cast<double>(n) <= x) continue;
        if (static_cast<double>(n) >= x) break;
        if (!sf[n]) continue;
        if (N > 1 && arith::gcd_u64(n, N) != 1) continue;
        ++res.term_count;
        double om = weights::bump(static_cast<double>(n) / x, w);
        acc += f.lambda_values[n - 1] * std::conj(g.lambda_values[n - 1]) * om;
    }
    res.value = acc;
    return res;
}

cplx euler_factor_H(uint64_t p, cplx s, uint64_t N,
                    const SatakePair& sat_f, const SatakePair& sat_g) {
    const cplx X = std::exp(-s * std::log(static_cast<double>(p)));
    if (N % p != 0) return 1.0 - X * X;
    cplx prod(1.0);
    const cplx a[2] = {sat_f.alpha1, sat_f.alpha2};
    const cplx b[2] = {sat_g.alpha1, sat_g.alpha2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) prod *= 1.0 - a[i] * std::conj(b[j]) * X;
    return prod;
}

cplx euler_factor_H1(uint64_t p, cplx s, cplx lambda_f_p, cplx lambda_g_p,
                     const SatakePair& sat_f, const SatakePair& sat_g) {
    const cplx X = std::exp(-s * std::log(static_cast<double>(p)));
    if (std::abs(X) >= 1.0)
        throw InvalidArgument("euler_factor_H1: |p^-s| >= 1 is outside the convergence range");
    cplx prod = (1.0 + lambda_f_p * std::conj(lambda_g_p) * X) / (1.0 - X * X);
    const cplx a[2] = {sat_f.alpha1, sat_f.alpha2};
    const cplx b[2] = {sat_g.alpha1, sat_g.alpha2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) prod *= 1.0 - a[i] * std::conj(b[j]) * X;
    return prod;
}

namespace {

// lambda(p) and chi(p) for a record; chi(p) = 0 at p | level
cplx chi_at(const NewformRecord& r, uint64_t p) {
    return r.character(p % r.character.modulus);
}

} // namespace

EulerProductEstimate rs_lfun_truncated(const NewformRecord& f, const NewformRecord& g,
                                       cplx s, uint64_t P) {
    const double sigma = s.real();
    if (sigma < 1.05)
        throw InvalidArgument("rs_lfun_truncated: Re s must be >= 1.05");
    if (f.prec() < P || g.prec() < P)
        throw PrecisionExceeded("rs_lfun_truncated: records need lambda(p) for p <= P");
    EulerProductEstimate est;
    est.s = s;
    est.prime_cutoff = P;
    cplx prod(1.0);
    for (uint32_t p : arith::prime_table(static_cast<uint32_t>(P))) {
        SatakePair sf = satake(f.lambda(p), chi_at(f, p), p);
        SatakePair sg = satake(g.lambda(p), chi_at(g, p), p);
        const cplx X = std::exp(-s * std::log(static_cast<double>(p)));
        const cplx a[2] = {sf.alpha1, sf.alpha2};
        const cplx b[2] = {sg.alpha1, sg.alpha2};
        cplx loc(1.0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) loc *= 1.0 - a[i] * std::conj(b[j]) * X;
        prod /= loc;
    }
    est.value = prod;
    const double lp = std::log(static_cast<double>(P));
    est.tail_bound = 8.0 * std::pow(static_cast<double>(P), 1.0 - sigma) / ((sigma - 1.0) * lp);
    return est;
}

cplx h_product(const NewformRecord& f, const NewformRecord& g, cplx s, uint64_t N, uint64_t P) {
    cplx prod(1.0);
    for (uint32_t p : arith::prime_table(static_cast<uint32_t>(P))) {
        SatakePair sf = satake(f.lambda(p), chi_at(f, p), p);
        SatakePair sg = satake(g.lambda(p), chi_at(g, p), p);
        prod *= euler_factor_H(p, s, N, sf, sg);
    }
    return prod;
}

cplx h1_product(const NewformRecord& f, const NewformRecord& g, cplx s, uint64_t N, uint64_t P) {
    cplx prod(1.0);
    for (uint32_t p : arith::prime_table(static_cast<uint32_t>(P))) {
        if (N % p == 0) continue;
        SatakePair sf = satake(f.lambda(p), chi_at(f, p), p);
        SatakePair sg = satake(g.lambda(p), chi_at(g, p), p);
        prod *= euler_factor_H1(p, s, f.lambda(p), g.lambda(p), sf, sg);
    }
    return prod;
}

double analytic_conductor_bound(int k, uint64_t N, double t) {
    double base = 1.0 + std::abs(t);
    return std::pow(base, 4.0) * static_cast<double>(k) * static_cast<double>(k) *
           std::pow(static_cast<double>(N), 3.0);
}

double convexity_bound(int k, uint64_t N, cplx s, double eps) {
    const double sigma = s.real();
    if (sigma < 0.5 || sigma > 1.0)
        throw InvalidArgument("convexity_bound: Re s must lie in [1/2, 1]");
    double q = analytic_conductor_bound(k, N, s.imag());
    return std::pow(q, (1.0 - sigma) / 2.0 + eps);
}

WeightedSumResult contour_sum_oracle(const NewformRecord& f, const NewformRecord& g,
                                     const weights::SmoothWeight& w, double x, uint64_t N,
                                     double sigma0, double T, uint64_t P,
                                     const ContourOptions& opt) {
    if (sigma0 < 1.5)
        throw InvalidArgument("contour_sum_oracle: sigma0 must be >= 1.5 (absolute convergence)");
    if (static_cast<double>(P) < x)
        throw InvalidArgument("contour_sum_oracle: Dirichlet cutoff P must be >= x");
    if (f.prec() < P || g.prec() < P)
        throw PrecisionExceeded("contour_sum_oracle: records need lambda up to P");

    // square-free, coprime Dirichlet coefficients scaled by n^-sigma0
    arith::SquarefreeTable sf = arith::squarefree_sieve(P);
    std::vector<double> logn;
    std::vector<cplx> an;
    for (uint64_t n = 1; n <= P; ++n) {
        if (!sf[n]) continue;
        if (N > 1 && arith::gcd_u64(n, N) != 1) continue;
        cplx c = f.lambda_values[n - 1] * std::conj(g.lambda_values[n - 1]);
        if (c == cplx(0.0)) continue;
        logn.push_back(std::log(static_cast<double>(n)));
        an.push_back(c * std::pow(static_cast<double>(n), -sigma0));
    }

    // frequencies present: ln(x/n) for n in [1, P]; band limit the trapezoid
    const double band = std::log(x) + std::log(static_cast<double>(P));
    double step = std::min(opt.max_step, 2.0 * M_PI / (4.0 * std::max(band, 1.0)));
    const size_t m = static_cast<size_t>(std::ceil(T / step));
    step = T / static_cast<double>(m);
    const size_t nodes = 2 * m + 1;

    const double lx = std::log(x);
    const double xs = std::pow(x, sigma0);

    // omega~ on the positive half; mirrored by Schwarz reflection (omega real)
    std::vector<cplx> mellin_pos(m + 1);
    for (size_t j = 0; j <= m; ++j)
        mellin_pos[j] = weights::mellin(w, cplx(sigma0, step * static_cast<double>(j))).value;

    std::vector<cplx> vals(nodes);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long idx = 0; idx < static_cast<long long>(nodes); ++idx) {
        const double t = -T + step * static_cast<double>(idx);
        cplx L(0.0);
        for (size_t i = 0; i < an.size(); ++i)
            L += an[i] * std::polar(1.0, -t * logn[i]);
        const cplx om = (t >= 0.0) ? mellin_pos[static_cast<size_t>(std::llround(t / step))]
                                   : std::conj(mellin_pos[static_cast<size_t>(std::llround(-t / step))]);
        vals[idx] = L * xs * std::polar(1.0, t * lx) * om;
    }

    // trapezoid, serial reduction in index order
    cplx integral(0.0);
    for (size_t idx = 0; idx < nodes; ++idx) {
        double wgt = (idx == 0 || idx + 1 == nodes) ? 0.5 : 1.0;
        integral += wgt * vals[idx];
    }
    integral *= step / (2.0 * M_PI);

    // tail estimate from the decay over the last tenth of the range
    const size_t back = std::max<size_t>(1, m / 10);
    double amp_end = std::abs(vals[nodes - 1]) + std::abs(vals[0]);
    double amp_in = std::abs(vals[nodes - 1 - back]) + std::abs(vals[back]);
    double tail;
    if (amp_in > 0.0 && amp_end < amp_in) {
        double rate = std::log(amp_in / amp_end) / (static_cast<double>(back) * step);
        tail = amp_end / (2.0 * M_PI * rate);
    } else {
        tail = amp_end * T * 0.1;
    }
    if (tail > opt.tail_tol_abs + opt.tail_tol_rel * std::abs(integral))
        throw QuadratureFailure("contour_sum_oracle: tail estimate " + std::to_string(tail) +
                                " exceeds tolerance at T = " + std::to_string(T));

    WeightedSumResult res;
    res.x = x;
    res.value = integral;
    res.term_count = an.size();
    res.method = WeightedSumResult::Method::contour;
    res.tail_estimate = tail;
    return res;
}

namespace {

// exponential integral E1(x) for x > 0
double expint1(double x) {
    if (x <= 0.0) throw InvalidArgument("expint1: x must be positive");
    if (x <= 1.0) {
        // -gamma - ln x + sum (-1)^{n+1} x^n / (n n!)
        double s = -0.57721566490153286 - std::log(x);
        double term = 1.0;
        for (int n = 1; n <= 30; ++n) {
            term *= -x / n;
            s -= term / n;
        }
        return s;
    }
    // Lentz continued fraction e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + ...))))
    double b = x + 1.0, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 100; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x);
}

} // namespace

double residue_estimate(const NewformRecord& f, uint64_t N, uint64_t P,
                        const std::vector<double>& delta_grid) {
    (void)N;   // the record's own character already encodes the bad primes
    if (delta_grid.size() < 4)
        throw InvalidArgument("residue_estimate: need at least 4 grid points");
    for (size_t i = 0; i < delta_grid.size(); ++i) {
        if (delta_grid[i] < 0.05 || delta_grid[i] > 0.5)
            throw InvalidArgument("residue_estimate: grid must lie in [0.05, 0.5]");
        if (i > 0 && delta_grid[i] >= delta_grid[i - 1])
            throw InvalidArgument("residue_estimate: grid must be decreasing");
    }
    // Quadratic Richardson: fit delta*L(1+delta) = a + b delta + c delta^2 and
    // report a.  The truncated product omits the divergent zeta part of
    // f (x) conj(f) beyond P; its expected log-mass under the prime density
    // 1/ln t is int_P^inf t^-s / ln t dt = E1(delta ln P), restored here so
    // the extrapolation sees a cutoff-stable curve.
    const double lp = std::log(static_cast<double>(P));
    double S0 = 0, S1 = 0, S2 = 0, S3 = 0, S4 = 0, T0 = 0, T1 = 0, T2 = 0;
    for (double d : delta_grid) {
        EulerProductEstimate e = rs_lfun_truncated(f, f, cplx(1.0 + d, 0.0), P);
        double gval = d * e.value.real() * std::exp(expint1(d * lp));
        double d2 = d * d;
        S0 += 1;
        S1 += d;
        S2 += d2;
        S3 += d2 * d;
        S4 += d2 * d2;
        T0 += gval;
        T1 += gval * d;
        T2 += gval * d2;
    }
    // solve the 3x3 normal equations
    double M[3][4] = {{S0, S1, S2, T0}, {S1, S2, S3, T1}, {S2, S3, S4, T2}};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        std::swap(M[c], M[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            double fac = M[r][c] / M[c][c];
            for (int j = c; j < 4; ++j) M[r][j] -= fac * M[c][j];
        }
    }
    double a = M[0][3] / M[0][0];
    if (!(a > 0.0))
        throw EstimationFailure("residue_estimate: non-positive extrapolation " +
                                std::to_string(a) + " (prime cutoff too small?)");
    return a;
}

double c_constant(const NewformRecord& f, const weights::SmoothWeight& w,
                  uint64_t N, uint64_t P, const std::vector<double>& delta_grid) {
    const cplx one(1.0, 0.0);
    double H = h_product(f, f, one, N, P).real();
    double H1 = h1_product(f, f, one, N, P).real();
    double res = residue_estimate(f, N, P, delta_grid);
    double om1 = weights::mellin(w, one).value.real();
    double c = H * H1 * res * om1;
    if (!(c > 0.0)) throw EstimationFailure("c_constant: non-positive value");
    return c;
}

} // namespace rslfun
} // namespace sfcusp
