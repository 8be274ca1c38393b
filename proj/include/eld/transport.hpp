#pragma once

#include <vector>

#include "eld/errors.hpp"
#include "eld/spectral.hpp"

namespace eld {

/// Uniform empirical measure on the real line: m support points, each of
/// mass 1/m. Values are sorted ascending at construction.
class Measure1D {
public:
    explicit Measure1D(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Measure with atoms { lambda_r * v_r(i) : i = 0..n-1 } for embedding
/// axis r, orientation-canonicalized (see below). Throws AxisOutOfRange.
///
/// The embedding's per-column sign fix depends on vertex order, so a
/// relabelled graph can hand us the mirrored multiset -S instead of S.
/// To keep the distance a function of the graph alone we canonicalize
/// each axis measure between S and -S: on the sorted, scale-normalized
/// values a_0..a_{m-1}, the mirrored-pair sums b_i = a_i + a_{m-1-i}
/// negate under reflection; the b_i of largest magnitude (smallest i on
/// ties) must be positive. A measure with all |b_i| <= 1e-11 is its own
/// reflection and is kept as-is.
Measure1D measure_from_axis(const SpectralEmbedding& emb, int r);

/// Exact order-p Wasserstein distance between two 1D uniform empirical
/// measures: the L^p norm of the quantile-function difference, integrated
/// piecewise over the merged breakpoint grid {i/m_a} U {j/m_b}.
/// Symmetric, exact zero for identical inputs. Throws InvalidOrder(p<1).
double wasserstein_1d(const Measure1D& a, const Measure1D& b, double p);

}  // namespace eld
