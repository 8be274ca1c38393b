#include "eld/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace eld {

Measure1D::Measure1D(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw BadParamsError("empirical measure needs at least one point");
    std::sort(values_.begin(), values_.end());
}

Measure1D measure_from_axis(const SpectralEmbedding& emb, int r) {
    if (r < 0 || static_cast<std::size_t>(r) >= emb.k())
        throw AxisOutOfRangeError(r, static_cast<int>(emb.k()));
    const std::size_t m = emb.n();
    const double lam = emb.eigenvalue(static_cast<std::size_t>(r));
    const double* col = emb.column(static_cast<std::size_t>(r));
    std::vector<double> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = lam * col[i];
    std::sort(vals.begin(), vals.end());

    // pick the canonical one of {S, -S}: the mirrored-pair sums
    // b_i = a_i + a_{m-1-i} flip sign under reflection, so we demand the
    // dominant one be positive (ties broken at the smallest index)
    const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
    if (scale > 0.0) {
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double b = vals[i] / scale + vals[m - 1 - i] / scale;
            if (std::abs(b) > std::abs(best)) best = b;
        }
        if (std::abs(best) > 1e-11 && best < 0.0) {
            std::vector<double> mirrored(m);
            for (std::size_t i = 0; i < m; ++i) mirrored[i] = -vals[m - 1 - i];
            vals = std::move(mirrored);
        }
    }
    return Measure1D(std::move(vals));
}

double wasserstein_1d(const Measure1D& a, const Measure1D& b, double p) {
    if (!(p >= 1.0)) throw InvalidOrderError(p);
    const auto& A = a.values();
    const auto& B = b.values();
    const std::uint64_t ma = A.size();
    const std::uint64_t mb = B.size();

    // quantile functions are step functions with breakpoints i/ma and
    // j/mb; integrate |Q_a - Q_b|^p piecewise over the merged grid,
    // comparing breakpoints by cross-multiplication so ties are exact
    std::uint64_t i = 0, j = 0;
    double prev = 0.0;
    double acc = 0.0;
    while (i < ma && j < mb) {
        const std::uint64_t lhs = (i + 1) * mb;
        const std::uint64_t rhs = (j + 1) * ma;
        const double t = lhs <= rhs ? static_cast<double>(i + 1) / static_cast<double>(ma)
                                    : static_cast<double>(j + 1) / static_cast<double>(mb);
        const double seg = t - prev;
        if (seg > 0.0) {
            const double d = std::abs(A[i] - B[j]);
            if (p == 1.0)
                acc += seg * d;
            else if (p == 2.0)
                acc += seg * d * d;
            else
                acc += seg * std::pow(d, p);
        }
        if (lhs <= rhs) ++i;
        if (rhs <= lhs) ++j;
        prev = t;
    }
    if (p == 1.0) return acc;
    if (p == 2.0) return std::sqrt(acc);
    return std::pow(acc, 1.0 / p);
}

}  // namespace eld
