#include "sfcusp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "sfcusp/errors.hpp"

namespace sfcusp {
namespace weights {

namespace {

// Gauss-Kronrod 7/15 on [-1, 1]: abscissae x >= 0, Kronrod weights, and the
// embedded 7-point Gauss weights (zero where the node is Kronrod-only)
constexpr int kGK = 8;
constexpr double kX[kGK] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kWK[kGK] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWG[kGK] = {
    0.417959183673469, 0.000000000000000, 0.381830050505119, 0.000000000000000,
    0.279705391489277, 0.000000000000000, 0.129484966168870, 0.000000000000000};

struct Segment {
    double a, b;
    cplx value;
    double err;
};

template <class F>
Segment gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx k(0.0), g(0.0);
    {
        cplx y0 = f(mid);
        k += kWK[0] * y0;
        g += kWG[0] * y0;
    }
    for (int i = 1; i < kGK; ++i) {
        cplx y = f(mid + h * kX[i]) + f(mid - h * kX[i]);
        k += kWK[i] * y;
        g += kWG[i] * y;
    }
    k *= h;
    g *= h;
    return {a, b, k, std::abs(k - g)};
}

} // namespace

double SmoothWeight::normalization() const {
    return norm > 0.0 ? norm : std::exp(16.0 * beta);
}

double SmoothWeight::operator()(double y) const { return bump(y, *this); }

double bump(double y, const SmoothWeight& w) {
    if (w.family != "expbump")
        throw InvalidArgument("bump: unknown weight family \"" + w.family + "\"");
    if (y <= 0.5 || y >= 1.0) return 0.0;
    const double t = (y - 0.5) * (1.0 - y);
    return w.normalization() * std::exp(-w.beta / t);
}

MellinValue mellin(const SmoothWeight& w, cplx s) {
    const double t_im = std::abs(s.imag());
    auto f = [&](double y) -> cplx {
        double om = bump(y, w);
        if (om == 0.0) return cplx(0.0);
        // y^(s-1) = exp((s-1) ln y)
        return std::exp((s - cplx(1.0)) * std::log(y)) * om;
    };
    // initial segmentation: at least 8 quadrature points per oscillation
    // period of y^(i t); the phase t*ln(y) sweeps t*ln(2) over the support
    size_t nseg = 4;
    if (t_im > 200.0) {
        double periods = t_im * std::log(2.0) / (2.0 * M_PI);
        nseg = std::max<size_t>(4, static_cast<size_t>(periods) + 1);
    }
    auto cmp = [](const Segment& x, const Segment& y) { return x.err < y.err; };
    std::priority_queue<Segment, std::vector<Segment>, decltype(cmp)> heap(cmp);
    cplx total(0.0);
    double toterr = 0.0;
    for (size_t i = 0; i < nseg; ++i) {
        double a = 0.5 + 0.5 * static_cast<double>(i) / nseg;
        double b = 0.5 + 0.5 * static_cast<double>(i + 1) / nseg;
        Segment seg = gk15(f, a, b);
        total += seg.value;
        toterr += seg.err;
        heap.push(seg);
    }
    size_t used = nseg;
    while (toterr > w.quad_tol && used < w.quad_budget) {
        Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        toterr -= worst.err;
        double m = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, m);
        Segment right = gk15(f, m, worst.b);
        total += left.value + right.value;
        toterr += left.err + right.err;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    if (toterr > w.quad_tol)
        throw QuadratureFailure("mellin: error estimate " + std::to_string(toterr) +
                                " above tolerance after " + std::to_string(used) + " segments");
    return {s, total, toterr};
}

DecayReport decay_check(const SmoothWeight& w, double A,
                        const std::vector<double>& t_samples, double sigma) {
    if (t_samples.size() < 3)
        throw InvalidArgument("decay_check: need at least 3 sample heights");
    for (size_t i = 1; i < t_samples.size(); ++i)
        if (t_samples[i] <= t_samples[i - 1])
            throw InvalidArgument("decay_check: t_samples must be increasing");
    DecayReport rep;
    rep.A = A;
    rep.threshold = -(A + 1.0) + 0.25;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double t : t_samples) {
        cplx s(sigma, t);
        MellinValue mv = mellin(w, s);
        double lx = std::log(std::abs(s));
        double ly = std::log(std::max(std::abs(mv.value), 1e-300));
        rep.samples.emplace_back(lx, ly);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(t_samples.size());
    rep.empirical_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.passes = rep.empirical_exponent <= rep.threshold;
    return rep;
}

} // namespace weights
} // namespace sfcusp
