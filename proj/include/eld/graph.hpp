#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eld/errors.hpp"

namespace eld {

using vertex_t = std::uint32_t;

/// One validated undirected edge, stored with u < v.
struct WeightedEdge {
    vertex_t u;
    vertex_t v;
    double w;
};

/// Unvalidated edge as supplied by callers; i/j in either order.
struct EdgeInput {
    vertex_t i;
    vertex_t j;
    double w = 1.0;
};

/// Simple undirected weighted graph with vertex ids 0..n-1.
/// Immutable after construction; edges are kept sorted by (u, v).
class Graph {
public:
    vertex_t vertex_count() const { return n_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    /// Weighted degree of every vertex (sum of incident edge weights).
    std::vector<double> weighted_degrees() const;

    /// FNV-1a over the canonical byte representation (n, sorted edges,
    /// IEEE weight bits). Stable across runs and platforms.
    std::uint64_t content_hash() const;

private:
    friend Graph build_graph(vertex_t, std::span<const EdgeInput>);
    Graph(vertex_t n, std::vector<WeightedEdge> edges)
        : n_(n), edges_(std::move(edges)) {}

    vertex_t n_;
    std::vector<WeightedEdge> edges_;
};

/// Validates and constructs a Graph.
/// Throws SelfLoopError, DuplicateEdgeError, NegativeWeightError,
/// VertexOutOfRangeError. Zero-weight edges are kept.
Graph build_graph(vertex_t n, std::span<const EdgeInput> edge_list);
Graph build_graph(vertex_t n, const std::vector<EdgeInput>& edge_list);

/// Relabels vertices: vertex i of g becomes perm[i].
Graph permute(const Graph& g, std::span<const vertex_t> perm);

/// Number of connected components (zero-weight edges count as edges).
int count_components(const Graph& g);

/// Symmetric real matrix; each unordered pair is written once and
/// mirrored on read. Dense storage packs the lower triangle, sparse
/// storage keeps the diagonal plus strictly-lower triplets.
class SymMatrix {
public:
    enum class Storage { dense, sparse };

    static SymMatrix make(vertex_t dim, Storage s);

    vertex_t dim() const { return dim_; }
    Storage storage() const { return storage_; }

    /// Accumulates v onto entry (i, j) (and by symmetry (j, i)).
    void add(vertex_t i, vertex_t j, double v);

    double entry(vertex_t i, vertex_t j) const;

    /// y = A x. y must have dim() elements; deterministic summation order.
    void matvec(std::span<const double> x, std::span<double> y) const;

    /// Gershgorin upper bound on the largest eigenvalue:
    /// max_i (a_ii + sum_{j != i} |a_ij|).
    double gershgorin_bound() const;

    /// Call once after assembly; sorts sparse triplets canonically.
    void finalize();

private:
    SymMatrix(vertex_t dim, Storage s);

    struct Triplet {
        vertex_t i;  // i > j always
        vertex_t j;
        double v;
    };

    vertex_t dim_;
    Storage storage_;
    std::vector<double> tri_;       // dense: packed lower triangle
    std::vector<double> diag_;      // sparse
    std::vector<Triplet> off_;      // sparse, strictly lower
    bool finalized_ = false;
};

/// Combinatorial Laplacian L = D - A. Storage defaults to dense for
/// n <= 2048 and sparse above; callers may force either.
SymMatrix laplacian(const Graph& g,
                    std::optional<SymMatrix::Storage> storage = std::nullopt);

/// Normalized Laplacian I - D^{-1/2} A D^{-1/2}. Rows and columns of
/// isolated (degree-zero) vertices are identically zero.
SymMatrix normalized_laplacian(const Graph& g,
                               std::optional<SymMatrix::Storage> storage = std::nullopt);

}  // namespace eld
