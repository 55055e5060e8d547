#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfcusp/modforms.hpp"
#include "sfcusp/qseries.hpp"
#include "sfcusp/weights.hpp"

namespace sfcusp {
namespace threshold {

using cplx = std::complex<double>;
using modforms::NewformRecord;

// Decomposition of a cusp form against lifted newforms:
//   f = sum_{i, delta} alpha_{i,delta} f_i(delta tau)
// with plain Fourier normalization on both sides, so a pure lift has
// alpha = 1.  d0 is the smallest delta carrying a nonzero coefficient.
struct Decomposition {
    int weight = 0;
    uint64_t level = 1;
    uint64_t conductor = 1;
    struct Entry {
        size_t form_index;
        uint64_t delta;
        cplx alpha;
    };
    std::vector<Entry> entries;   // only numerically nonzero coefficients
    uint64_t d0 = 1;
    double residual = 0.0;        // relative least-squares residual
};

// Solves the coefficient-matching least squares over indices 1..prec.
// Requires N/m_chi square-free; columns are (form i, square-free delta) with
// delta*m_chi | N and level(f_i)*delta | N.
Decomposition decompose(const QSeries& f, const std::vector<NewformRecord>& basis,
                        uint64_t N, uint64_t m_chi, size_t prec);

struct ProjectedCoefficients {
    std::vector<uint64_t> indices;          // n with (n, N) = 1, n <= n_max
    std::vector<cplx> direct;               // a_f(d0 n) read from f
    std::vector<cplx> via_decomposition;    // sum_i alpha_{i,d0} a_{f_i}(n)
    double max_deviation = 0.0;
    bool exact_agreement = false;           // set when both routes ran exactly
};

// a_f(d0 n) over n coprime to N, computed twice: straight from f and through
// the decomposition.  Disagreement beyond tol raises InternalInconsistency.
ProjectedCoefficients project_d0_coefficients(const QSeries& f, const Decomposition& dec,
                                              const std::vector<NewformRecord>& basis,
                                              uint64_t N, size_t n_max, double tol = 1e-8);

// smallest square-free n <= search_limit with a(f, n) != 0 (exact test)
std::optional<uint64_t> min_squarefree_nonzero(const QSeries& f, uint64_t N,
                                               uint64_t search_limit);
// floating variant: |lambda(n)| > tol relative to the max over the range
std::optional<uint64_t> min_squarefree_nonzero(const NewformRecord& f,
                                               uint64_t search_limit, double tol = 1e-9);

// k^(3+eps) N^(3.5+eps), constant 1
double theorem_bound(int k, uint64_t N, double eps);

// natural log of a0 N 2^(r(r-1)/2) exp(4 r log^2(7 k^2 N)), r = (k-1) N
double legacy_bound_log(int k, uint64_t N, double a0);

struct AsymptoticFit {
    std::vector<std::pair<double, double>> samples;   // (x, S(x)) with S real part
    bool diagonal = true;
    double C_hat = 0.0;       // slope of the linear term (diagonal fits)
    double K_hat = 0.0;       // error amplitude
    double c_hat = 0.0;       // error exponent (fixed 0.75 for diagonal)
    double residual = 0.0;
};

// diagonal fit S(x) = C x + K x^0.75 over a geometric grid
AsymptoticFit fit_diagonal(const NewformRecord& f, const weights::SmoothWeight& w,
                           uint64_t N, const std::vector<double>& x_grid);
// off-diagonal fit |S(x)| = K x^c with free exponent
AsymptoticFit fit_cross(const NewformRecord& f, const NewformRecord& g,
                        const weights::SmoothWeight& w, uint64_t N,
                        const std::vector<double>& x_grid);

std::vector<AsymptoticFit> asymptotic_fit(
    const std::vector<std::pair<const NewformRecord*, const NewformRecord*>>& pairs,
    const weights::SmoothWeight& w, uint64_t N, const std::vector<double>& x_grid);

struct ThresholdReport {
    std::string form;
    int k = 0;
    uint64_t N = 1;
    uint64_t d0 = 1;
    std::optional<uint64_t> observed_min_sf;
    uint64_t search_limit = 0;
    double eps = 0.01;
    double a0 = 1.0;
    double theorem_bound_value = 0.0;
    double legacy_bound_log_value = 0.0;
    double dim_proxy = 0.0;   // k N / d0, the report-time stand-in for the
                              // new-space dimension bound
    bool satisfied = false;
    std::string zero_mode;    // "exact" or "float"
    std::string error;        // empty on success
    std::string note;         // e.g. basis-completeness assumption
};

struct ScanEntry {
    std::string form_spec;   // delta | eigen:<k> | eta:<N> | lift:<base>:<delta> | file:<path>
    int k = 0;
    uint64_t N = 1;
};

struct ScanConfig {
    uint64_t search_limit = 1000;
    double eps = 0.01;
    double a0 = 1.0;
    size_t prec = 1200;
    int threads = 0;   // 0: library default
};

// one report per entry, input order, failures recorded per entry
std::vector<ThresholdReport> scan(const std::vector<ScanEntry>& grid, const ScanConfig& config);

// deterministic writers; header_lines are emitted as leading '#' comments
std::string reports_to_csv(const std::vector<ThresholdReport>& reports,
                           const std::vector<std::string>& header_lines);
std::string fit_to_plotdata(const AsymptoticFit& fit,
                            const std::vector<std::string>& header_lines);

} // namespace threshold
} // namespace sfcusp
