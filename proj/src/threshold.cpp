#include "sfcusp/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/rslfun.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sfcusp {
namespace threshold {

namespace {

// a-normalized coefficient a_i(n) of a record, exact table preferred
cplx record_a(const NewformRecord& r, uint64_t n) {
    if (n == 0) return 0.0;
    if (n <= r.integral_a.size()) return r.integral_a[n - 1].to_double();
    if (n > r.prec())
        throw PrecisionExceeded("decompose: basis record too short at n = " + std::to_string(n));
    const long double half = (r.weight - 1) / 2.0L;
    return r.lambda_values[n - 1] * static_cast<double>(powl(static_cast<long double>(n), half));
}

// least squares through Householder QR with column pivoting; returns the
// solution, the relative residual and the effective rank
struct LsqResult {
    std::vector<cplx> x;
    double rel_residual = 0.0;
    size_t rank = 0;
};

LsqResult lsq_qr(std::vector<std::vector<cplx>> A, std::vector<cplx> b) {
    const size_t rows = b.size();
    const size_t cols = A.size();
    double bnorm = 0.0;
    for (const cplx& v : b) bnorm += std::norm(v);
    bnorm = std::sqrt(bnorm);

    std::vector<size_t> perm(cols);
    for (size_t j = 0; j < cols; ++j) perm[j] = j;
    std::vector<double> colnorm(cols, 0.0);
    for (size_t j = 0; j < cols; ++j)
        for (size_t i = 0; i < rows; ++i) colnorm[j] += std::norm(A[j][i]);

    std::vector<double> diag(cols, 0.0);
    for (size_t step = 0; step < cols; ++step) {
        size_t best = step;
        for (size_t j = step + 1; j < cols; ++j)
            if (colnorm[j] > colnorm[best]) best = j;
        std::swap(A[step], A[best]);
        std::swap(colnorm[step], colnorm[best]);
        std::swap(perm[step], perm[best]);

        // Householder on rows step..rows-1 of column step
        double xnorm = 0.0;
        for (size_t i = step; i < rows; ++i) xnorm += std::norm(A[step][i]);
        xnorm = std::sqrt(xnorm);
        diag[step] = xnorm;
        if (xnorm == 0.0) continue;
        cplx alpha = A[step][step];
        double aab = std::abs(alpha);
        cplx phase = (aab > 0.0) ? alpha / aab : cplx(1.0);
        cplx v0 = alpha + phase * xnorm;
        std::vector<cplx> v(rows - step);
        v[0] = v0;
        for (size_t i = step + 1; i < rows; ++i) v[i - step] = A[step][i];
        double vnorm2 = 0.0;
        for (const cplx& c : v) vnorm2 += std::norm(c);
        if (vnorm2 == 0.0) continue;
        auto apply = [&](std::vector<cplx>& col) {
            cplx dot(0.0);
            for (size_t i = step; i < rows; ++i) dot += std::conj(v[i - step]) * col[i];
            dot *= 2.0 / vnorm2;
            for (size_t i = step; i < rows; ++i) col[i] -= dot * v[i - step];
        };
        for (size_t j = step; j < cols; ++j) apply(A[j]);
        apply(b);
        for (size_t j = step + 1; j < cols; ++j) colnorm[j] -= std::norm(A[j][step]);
    }

    LsqResult out;
    const double tol = 1e-10 * std::max(diag[0], 1e-300);
    out.rank = cols;
    for (size_t j = 0; j < cols; ++j)
        if (std::abs(A[j][j]) < tol) { out.rank = j; break; }

    std::vector<cplx> y(cols, cplx(0.0));
    if (out.rank == cols) {
        for (size_t j = cols; j-- > 0;) {
            cplx acc = b[j];
            for (size_t l = j + 1; l < cols; ++l) acc -= A[l][j] * y[l];
            y[j] = acc / A[j][j];
        }
    }
    out.x.assign(cols, cplx(0.0));
    for (size_t j = 0; j < cols; ++j) out.x[perm[j]] = y[j];
    double rn = 0.0;
    for (size_t i = cols; i < rows; ++i) rn += std::norm(b[i]);
    out.rel_residual = std::sqrt(rn) / std::max(bnorm, 1e-300);
    return out;
}

} // namespace

Decomposition decompose(const QSeries& f, const std::vector<NewformRecord>& basis,
                        uint64_t N, uint64_t m_chi, size_t prec) {
    if (N == 0 || m_chi == 0 || N % m_chi != 0)
        throw InvalidArgument("decompose: conductor must divide the level");
    if (arith::mobius(N / m_chi) == 0)
        throw InvalidArgument("decompose: N / m_chi = " + std::to_string(N / m_chi) +
                              " is not square-free (outside the theorem hypothesis)");
    if (basis.empty()) throw InvalidArgument("decompose: empty newform basis");
    if (f.prec() <= 1) throw InvalidArgument("decompose: form has no coefficients");

    // admissible columns (i, delta)
    struct Col {
        size_t i;
        uint64_t delta;
    };
    std::vector<Col> cols;
    for (uint64_t delta : arith::squarefree_divisors(N)) {
        if ((delta * m_chi) == 0 || N % (delta * m_chi) != 0) continue;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (N % (basis[i].level * delta) != 0) continue;
            cols.push_back({i, delta});
        }
    }
    if (cols.empty()) throw BasisIncomplete("decompose: no admissible (form, delta) columns");

    size_t rows = std::min<size_t>(prec, f.prec() - 1);
    if (rows < 4 * cols.size())
        throw InvalidArgument("decompose: need precision >= 4x the number of unknowns (" +
                              std::to_string(4 * cols.size()) + ")");

    std::vector<std::vector<cplx>> A(cols.size(), std::vector<cplx>(rows, cplx(0.0)));
    std::vector<cplx> b(rows);
    for (size_t m = 1; m <= rows; ++m) b[m - 1] = f.coefficient(m).to_double();
    for (size_t j = 0; j < cols.size(); ++j) {
        const NewformRecord& r = basis[cols[j].i];
        const uint64_t delta = cols[j].delta;
        for (size_t m = delta; m <= rows; m += delta) A[j][m - 1] = record_a(r, m / delta);
    }

    LsqResult ls = lsq_qr(std::move(A), std::move(b));
    if (ls.rank < cols.size())
        throw BasisIncomplete("decompose: rank-deficient system (rank " + std::to_string(ls.rank) +
                              " of " + std::to_string(cols.size()) + ")");
    if (ls.rel_residual > 1e-8)
        throw DecompositionFailure("decompose: relative residual " +
                                   std::to_string(ls.rel_residual) + " above 1e-8");

    Decomposition dec;
    dec.weight = f.has_meta() ? f.weight() : basis[0].weight;
    dec.level = N;
    dec.conductor = m_chi;
    dec.residual = ls.rel_residual;
    double amax = 0.0;
    for (const cplx& a : ls.x) amax = std::max(amax, std::abs(a));
    uint64_t d0 = 0;
    for (size_t j = 0; j < cols.size(); ++j) {
        if (std::abs(ls.x[j]) <= 1e-9 * amax) continue;
        dec.entries.push_back({cols[j].i, cols[j].delta, ls.x[j]});
        if (d0 == 0 || cols[j].delta < d0) d0 = cols[j].delta;
    }
    if (d0 == 0)
        throw DecompositionFailure("decompose: all coefficients vanish (zero form?)");
    dec.d0 = d0;
    return dec;
}

ProjectedCoefficients project_d0_coefficients(const QSeries& f, const Decomposition& dec,
                                              const std::vector<NewformRecord>& basis,
                                              uint64_t N, size_t n_max, double tol) {
    ProjectedCoefficients out;
    const uint64_t d0 = dec.d0;
    if (d0 * n_max >= f.prec())
        throw PrecisionExceeded("project_d0_coefficients: d0 * n_max exceeds form precision");

    std::vector<std::pair<size_t, cplx>> d0_entries;
    for (const auto& e : dec.entries)
        if (e.delta == d0) d0_entries.emplace_back(e.form_index, e.alpha);

    // exact route is possible when alpha are (near) small rationals and the
    // referenced records carry exact integral coefficients
    bool exact_ok = true;
    std::vector<std::pair<size_t, Rational>> exact_alpha;
    for (const auto& [i, a] : d0_entries) {
        if (std::abs(a.imag()) > 1e-12) { exact_ok = false; break; }
        double re = a.real();
        double rounded = std::round(re * (1 << 20)) / (1 << 20);
        if (std::abs(re - rounded) > 1e-9 * (1.0 + std::abs(re))) { exact_ok = false; break; }
        long long num = static_cast<long long>(std::llround(re * (1 << 20)));
        exact_alpha.emplace_back(i, Rational(BigInt(num), BigInt(1 << 20)));
    }

    for (uint64_t n = 1; n <= n_max; ++n) {
        if (N > 1 && arith::gcd_u64(n, N) != 1) continue;
        out.indices.push_back(n);
        out.direct.push_back(f.coefficient(d0 * n).to_double());
        cplx acc(0.0);
        for (const auto& [i, a] : d0_entries) acc += a * record_a(basis[i], n);
        out.via_decomposition.push_back(acc);
        double dev = std::abs(out.direct.back() - acc);
        out.max_deviation = std::max(out.max_deviation, dev);
    }

    if (exact_ok) {
        out.exact_agreement = true;
        for (uint64_t n : out.indices) {
            Rational direct = f.coefficient(d0 * n);
            Rational via(0);
            for (const auto& [i, a] : exact_alpha) {
                const NewformRecord& r = basis[i];
                if (n > r.integral_a.size()) { out.exact_agreement = false; break; }
                via += a * Rational(r.integral_a[n - 1]);
            }
            if (!out.exact_agreement || !(via == direct)) {
                out.exact_agreement = false;
                break;
            }
        }
    }

    double scale = 0.0;
    for (const cplx& v : out.direct) scale = std::max(scale, std::abs(v));
    if (out.max_deviation > tol * std::max(1.0, scale))
        throw InternalInconsistency("project_d0_coefficients: routes deviate by " +
                                    std::to_string(out.max_deviation));
    return out;
}

std::optional<uint64_t> min_squarefree_nonzero(const QSeries& f, uint64_t /*N*/,
                                               uint64_t search_limit) {
    if (search_limit >= f.prec())
        throw PrecisionExceeded("min_squarefree_nonzero: search limit exceeds precision");
    if (search_limit == 0) return std::nullopt;
    arith::SquarefreeTable sf = arith::squarefree_sieve(search_limit);
    for (uint64_t n = 1; n <= search_limit; ++n)
        if (sf[n] && !f.coefficient(n).is_zero()) return n;
    return std::nullopt;
}

std::optional<uint64_t> min_squarefree_nonzero(const NewformRecord& f,
                                               uint64_t search_limit, double tol) {
    if (search_limit > f.prec())
        throw PrecisionExceeded("min_squarefree_nonzero: search limit exceeds record precision");
    if (search_limit == 0) return std::nullopt;
    double scale = 0.0;
    for (uint64_t n = 1; n <= search_limit; ++n)
        scale = std::max(scale, std::abs(f.lambda_values[n - 1]));
    arith::SquarefreeTable sf = arith::squarefree_sieve(search_limit);
    for (uint64_t n = 1; n <= search_limit; ++n)
        if (sf[n] && std::abs(f.lambda_values[n - 1]) > tol * scale) return n;
    return std::nullopt;
}

double theorem_bound(int k, uint64_t N, double eps) {
    if (eps < 0.0) throw InvalidArgument("theorem_bound: eps must be >= 0");
    return std::pow(static_cast<double>(k), 3.0 + eps) *
           std::pow(static_cast<double>(N), 3.5 + eps);
}

double legacy_bound_log(int k, uint64_t N, double a0) {
    if (a0 <= 0.0) throw InvalidArgument("legacy_bound_log: a0 must be positive");
    const double r = static_cast<double>(k - 1) * static_cast<double>(N);
    const double l7 = std::log(7.0 * static_cast<double>(k) * static_cast<double>(k) *
                               static_cast<double>(N));
    return std::log(a0) + std::log(static_cast<double>(N)) +
           0.5 * r * (r - 1.0) * std::log(2.0) + 4.0 * r * l7 * l7;
}

namespace {

void check_grid(const std::vector<double>& x_grid) {
    if (x_grid.size() < 6)
        throw InvalidArgument("asymptotic_fit: need at least 6 grid points");
    double lo = *std::min_element(x_grid.begin(), x_grid.end());
    double hi = *std::max_element(x_grid.begin(), x_grid.end());
    if (hi < 100.0 * lo)
        throw InvalidArgument("asymptotic_fit: grid must span at least two decades");
}

} // namespace

AsymptoticFit fit_diagonal(const NewformRecord& f, const weights::SmoothWeight& w,
                           uint64_t N, const std::vector<double>& x_grid) {
    check_grid(x_grid);
    AsymptoticFit fit;
    fit.diagonal = true;
    fit.c_hat = 0.75;
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (double x : x_grid) {
        double S = rslfun::direct_weighted_sum(f, f, w, x, N).value.real();
        fit.samples.emplace_back(x, S);
        double u = x, v = std::pow(x, 0.75);
        a11 += u * u;
        a12 += u * v;
        a22 += v * v;
        b1 += S * u;
        b2 += S * v;
    }
    double det = a11 * a22 - a12 * a12;
    fit.C_hat = (b1 * a22 - b2 * a12) / det;
    fit.K_hat = (a11 * b2 - a12 * b1) / det;
    double rn = 0.0;
    for (auto& [x, S] : fit.samples) {
        double m = fit.C_hat * x + fit.K_hat * std::pow(x, 0.75);
        rn += (S - m) * (S - m);
    }
    fit.residual = std::sqrt(rn);
    return fit;
}

AsymptoticFit fit_cross(const NewformRecord& f, const NewformRecord& g,
                        const weights::SmoothWeight& w, uint64_t N,
                        const std::vector<double>& x_grid) {
    check_grid(x_grid);
    AsymptoticFit fit;
    fit.diagonal = false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t used = 0;
    for (double x : x_grid) {
        cplx S = rslfun::direct_weighted_sum(f, g, w, x, N).value;
        fit.samples.emplace_back(x, S.real());
        double m = std::abs(S);
        if (m < 1e-12) continue;
        double lx = std::log(x), ly = std::log(m);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++used;
    }
    if (used < 3)
        throw EstimationFailure("fit_cross: too many vanishing samples for a log fit");
    double n = static_cast<double>(used);
    fit.c_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - fit.c_hat * sx) / n;
    fit.K_hat = std::exp(intercept);
    double rn = 0.0;
    for (auto& [x, S] : fit.samples) {
        double m = std::abs(S);
        if (m < 1e-12) continue;
        double e = std::log(m) - (std::log(fit.K_hat) + fit.c_hat * std::log(x));
        rn += e * e;
    }
    fit.residual = std::sqrt(rn);
    return fit;
}

std::vector<AsymptoticFit> asymptotic_fit(
    const std::vector<std::pair<const NewformRecord*, const NewformRecord*>>& pairs,
    const weights::SmoothWeight& w, uint64_t N, const std::vector<double>& x_grid) {
    std::vector<AsymptoticFit> fits;
    for (const auto& [f, g] : pairs) {
        if (f == g)
            fits.push_back(fit_diagonal(*f, w, N, x_grid));
        else
            fits.push_back(fit_cross(*f, *g, w, N, x_grid));
    }
    return fits;
}

namespace {

struct BuiltForm {
    QSeries series;            // exact expansion (may be empty for file forms)
    NewformRecord record;      // lambda view when available
    bool have_series = false;
    bool have_record = false;
    int k = 0;
    uint64_t N = 1;
    uint64_t d0 = 1;
    std::string note;
};

QSeries series_from_record(const NewformRecord& r, size_t prec) {
    std::vector<Rational> c(prec, Rational(0));
    size_t n_max = std::min<size_t>(prec - 1, r.integral_a.size());
    for (size_t n = 1; n <= n_max; ++n) c[n] = Rational(r.integral_a[n - 1]);
    QSeries q(std::move(c));
    q.set_meta(r.weight, static_cast<long long>(r.level));
    return q;
}

BuiltForm build_form(const ScanEntry& entry, const ScanConfig& cfg) {
    BuiltForm out;
    out.k = entry.k;
    out.N = entry.N;
    const std::string& spec = entry.form_spec;
    auto field = [&](size_t idx) -> std::string {
        std::stringstream ss(spec);
        std::string part;
        for (size_t i = 0; i <= idx; ++i)
            if (!std::getline(ss, part, ':')) return "";
        return part;
    };
    const std::string kind = field(0);
    if (kind == "delta") {
        out.record = modforms::level1_newform(12, cfg.prec);
        out.series = series_from_record(out.record, cfg.prec);
        out.have_series = out.have_record = true;
        out.k = 12;
        out.N = std::max<uint64_t>(entry.N, 1);
    } else if (kind == "eigen") {
        int k = std::stoi(field(1));
        if (k == 24) {
            auto [f, g] = modforms::weight24_newforms(cfg.prec);
            const std::string which = field(2);
            out.record = (which == "1") ? g : f;
            out.have_record = true;
        } else {
            out.record = modforms::level1_newform(k, cfg.prec);
            out.series = series_from_record(out.record, cfg.prec);
            out.have_series = out.have_record = true;
        }
        out.k = k;
        out.N = 1;
    } else if (kind == "eta") {
        uint64_t N = std::stoull(field(1));
        out.record = modforms::builtin_eta_newform(N, cfg.prec);
        out.series = series_from_record(out.record, cfg.prec);
        out.have_series = out.have_record = true;
        out.k = out.record.weight;
        out.N = N;
    } else if (kind == "lift") {
        const std::string base = field(1);
        uint64_t delta = std::stoull(field(2));
        NewformRecord rec;
        if (base == "delta") {
            rec = modforms::level1_newform(12, cfg.prec);
        } else if (base.rfind("eta", 0) == 0) {
            rec = modforms::builtin_eta_newform(std::stoull(base.substr(3)), cfg.prec);
        } else {
            rec = modforms::level1_newform(std::stoi(base), cfg.prec);
        }
        QSeries b = series_from_record(rec, cfg.prec);
        out.series = modforms::degenerate_lift(b, delta, cfg.prec);
        out.k = rec.weight;
        out.N = rec.level * delta;
        // d0 through the decomposition against the supplied one-form basis
        Decomposition dec = decompose(out.series, {rec}, out.N, 1,
                                      std::min<size_t>(cfg.prec - 1, 64));
        out.d0 = dec.d0;
        out.have_series = true;
        out.note = "basis completeness trusted (single built-in newform)";
    } else {
        throw InvalidArgument("scan: unknown form spec \"" + spec + "\"");
    }
    return out;
}

} // namespace

std::vector<ThresholdReport> scan(const std::vector<ScanEntry>& grid, const ScanConfig& config) {
    std::vector<ThresholdReport> reports(grid.size());
#ifdef _OPENMP
    int nthreads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
        ThresholdReport rep;
        rep.form = grid[i].form_spec;
        rep.eps = config.eps;
        rep.a0 = config.a0;
        rep.search_limit = config.search_limit;
        try {
            BuiltForm bf = build_form(grid[i], config);
            rep.k = bf.k;
            rep.N = bf.N;
            rep.d0 = bf.d0;
            rep.note = bf.note;
            uint64_t limit = config.search_limit;
            if (bf.have_series) {
                limit = std::min<uint64_t>(limit, bf.series.prec() - 1);
                rep.observed_min_sf = min_squarefree_nonzero(bf.series, bf.N, limit);
                rep.zero_mode = "exact";
            } else {
                limit = std::min<uint64_t>(limit, bf.record.prec());
                rep.observed_min_sf = min_squarefree_nonzero(bf.record, limit);
                rep.zero_mode = "float";
            }
            rep.search_limit = limit;
            rep.theorem_bound_value = theorem_bound(bf.k, bf.N, config.eps);
            rep.legacy_bound_log_value = legacy_bound_log(bf.k, bf.N, config.a0);
            rep.dim_proxy = static_cast<double>(bf.k) * static_cast<double>(bf.N) /
                            static_cast<double>(std::max<uint64_t>(bf.d0, 1));
            rep.satisfied = rep.observed_min_sf.has_value() &&
                            static_cast<double>(*rep.observed_min_sf) <= rep.theorem_bound_value;
            if (!rep.observed_min_sf.has_value())
                rep.error = "no nonzero square-free coefficient within the search limit";
        } catch (const Error& e) {
            rep.error = std::string(e.category()) + ": " + e.what();
        } catch (const std::exception& e) {
            rep.error = std::string("error: ") + e.what();
        }
        reports[i] = std::move(rep);
    }
    return reports;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

} // namespace

std::string reports_to_csv(const std::vector<ThresholdReport>& reports,
                           const std::vector<std::string>& header_lines) {
    std::string out;
    for (const std::string& h : header_lines) out += "# " + h + "\n";
    out += "form,k,N,d0,observed_min_sf,search_limit,eps,a0,theorem_bound,"
           "legacy_bound_log,dim_proxy,satisfied,zero_mode,note,error\n";
    for (const ThresholdReport& r : reports) {
        out += sanitize(r.form) + "," + std::to_string(r.k) + "," + std::to_string(r.N) + "," +
               std::to_string(r.d0) + ",";
        out += r.observed_min_sf ? std::to_string(*r.observed_min_sf) : "";
        out += "," + std::to_string(r.search_limit) + "," + fmt_double(r.eps) + "," +
               fmt_double(r.a0) + "," + fmt_double(r.theorem_bound_value) + "," +
               fmt_double(r.legacy_bound_log_value) + "," + fmt_double(r.dim_proxy) + "," +
               (r.satisfied ? "true" : "false") + "," + r.zero_mode + "," + sanitize(r.note) +
               "," + sanitize(r.error) + "\n";
    }
    return out;
}

std::string fit_to_plotdata(const AsymptoticFit& fit,
                            const std::vector<std::string>& header_lines) {
    std::string out;
    for (const std::string& h : header_lines) out += "# " + h + "\n";
    out += fit.diagonal ? "# x  S(x)  C*x + K*x^0.75\n" : "# x  S(x)  K*x^c\n";
    for (const auto& [x, S] : fit.samples) {
        double model = fit.diagonal ? fit.C_hat * x + fit.K_hat * std::pow(x, fit.c_hat)
                                    : fit.K_hat * std::pow(x, fit.c_hat);
        out += fmt_double(x) + " " + fmt_double(S) + " " + fmt_double(model) + "\n";
    }
    return out;
}

} // namespace threshold
} // namespace sfcusp
