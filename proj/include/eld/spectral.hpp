#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eld/graph.hpp"

namespace eld {

enum class LaplacianMode { combinatorial, normalized };

/// First-k eigenpairs of a graph Laplacian, eigenvalues ascending,
/// eigenvectors unit-norm and sign-fixed. Column r of `vectors` is stored
/// at vectors[r * n .. r * n + n) (column-major).
class SpectralEmbedding {
public:
    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    const std::vector<double>& vectors() const { return vectors_; }

    double eigenvalue(std::size_t r) const { return eigenvalues_[r]; }
    const double* column(std::size_t r) const { return vectors_.data() + r * n_; }

    /// Reassembles an embedding from raw parts (cache reads, tests).
    /// Checks sizes only; invariants are the caller's responsibility.
    static SpectralEmbedding from_parts(std::size_t n, std::size_t k,
                                        std::vector<double> eigenvalues,
                                        std::vector<double> vectors);

private:
    SpectralEmbedding() = default;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<double> eigenvalues_;   // size k
    std::vector<double> vectors_;       // size n * k, column-major
};

struct EmbedOptions {
    /// Dense full eigendecomposition at or below this vertex count,
    /// iterative partial solver above.
    std::size_t sparse_threshold = 2048;
    /// Overrides the threshold choice entirely when set.
    std::optional<bool> force_iterative;
    /// Iterative solver: per-pair convergence tolerance (relative to
    /// max(1, |lambda|)).
    double residual_tol = 1e-10;
    /// Iterative solver: iteration cap as a multiple of n.
    std::size_t max_iterations_factor = 10;
};

/// Smallest-k eigenpairs of the chosen Laplacian. Deterministic:
/// repeated calls on the same graph give identical bits.
/// Throws KTooLargeError when k < 1 or k > n, ConvergenceFailureError
/// when the iterative path cannot reach tolerance.
SpectralEmbedding embed(const Graph& g, int k,
                        LaplacianMode mode = LaplacianMode::combinatorial,
                        const EmbedOptions& opts = {});

/// Returns v or -v so that the first entry with |entry| > 1e-12 is
/// positive (the lexicographically larger of the pair).
/// Throws AllZeroVectorError when no entry clears the threshold.
std::vector<double> sign_fix(std::vector<double> v);

/// Tr(Y^T L Y) = sum_r v_r^T L v_r for the embedding's columns.
double embedding_trace(const SpectralEmbedding& emb, const SymMatrix& L);

}  // namespace eld
