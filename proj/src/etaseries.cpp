#include "sfcusp/etaseries.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sfcusp {
namespace eta {

SparseSeries euler_product_sparse(uint64_t prec) {
    SparseSeries s;
    s.terms.emplace_back(0, 1);
    for (long long j = 1;; ++j) {
        uint64_t g1 = static_cast<uint64_t>(j) * (3 * j - 1) / 2;
        uint64_t g2 = static_cast<uint64_t>(j) * (3 * j + 1) / 2;
        long long c = (j % 2 == 0) ? 1 : -1;
        bool any = false;
        if (g1 < prec) { s.terms.emplace_back(g1, c); any = true; }
        if (g2 < prec) { s.terms.emplace_back(g2, c); any = true; }
        if (!any) break;
    }
    std::sort(s.terms.begin(), s.terms.end());
    return s;
}

SparseSeries cube_sparse(uint64_t prec) {
    SparseSeries s;
    for (uint64_t m = 0;; ++m) {
        uint64_t t = m * (m + 1) / 2;
        if (t >= prec) break;
        long long c = static_cast<long long>(2 * m + 1);
        s.terms.emplace_back(t, (m % 2 == 0) ? c : -c);
    }
    return s;
}

SparseSeries dilate(const SparseSeries& s, uint64_t d, uint64_t prec) {
    SparseSeries r;
    for (const auto& [e, c] : s.terms) {
        uint64_t ed = e * d;
        if (ed >= prec) break;
        r.terms.emplace_back(ed, c);
    }
    return r;
}

void mul_sparse_fast(std::vector<double>& out, const std::vector<double>& in,
                     const SparseSeries& s) {
    const size_t n = in.size();
    out.assign(n, 0.0);
    const size_t block = 1 << 16;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long b = 0; b < static_cast<long long>(n); b += block) {
        const size_t lo = static_cast<size_t>(b);
        const size_t hi = std::min(n, lo + block);
        for (const auto& [e, c] : s.terms) {
            if (e >= hi) break;
            const size_t start = std::max(lo, static_cast<size_t>(e));
            const double cc = static_cast<double>(c);
            const double* src = in.data() + (start - e);
            double* dst = out.data() + start;
            const size_t len = hi - start;
            for (size_t i = 0; i < len; ++i) dst[i] += cc * src[i];
        }
    }
}

std::vector<double> euler_power_fast(unsigned e, uint64_t prec) {
    if (e == 0) {
        std::vector<double> one(prec, 0.0);
        if (prec) one[0] = 1.0;
        return one;
    }
    const SparseSeries cube = cube_sparse(prec);
    const SparseSeries single = euler_product_sparse(prec);
    unsigned cubes = e / 3, singles = e % 3;
    std::vector<double> acc(prec, 0.0), tmp;
    // densify the largest available factor directly to save one pass
    if (cubes > 0) {
        for (const auto& [ee, cc] : cube.terms) acc[ee] = static_cast<double>(cc);
        --cubes;
    } else {
        for (const auto& [ee, cc] : single.terms) acc[ee] = static_cast<double>(cc);
        --singles;
    }
    for (; singles > 0; --singles) {
        mul_sparse_fast(tmp, acc, single);
        acc.swap(tmp);
    }
    for (; cubes > 0; --cubes) {
        mul_sparse_fast(tmp, acc, cube);
        acc.swap(tmp);
    }
    return acc;
}

} // namespace eta
} // namespace sfcusp
