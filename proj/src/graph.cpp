#include "eld/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

namespace eld {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
        h ^= (word >> (8 * b)) & 0xffu;
        h *= kFnvPrime;
    }
}

}  // namespace

std::vector<double> Graph::weighted_degrees() const {
    std::vector<double> deg(n_, 0.0);
    for (const auto& e : edges_) {
        deg[e.u] += e.w;
        deg[e.v] += e.w;
    }
    return deg;
}

std::uint64_t Graph::content_hash() const {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, n_);
    fnv_mix(h, edges_.size());
    for (const auto& e : edges_) {
        fnv_mix(h, e.u);
        fnv_mix(h, e.v);
        fnv_mix(h, std::bit_cast<std::uint64_t>(e.w));
    }
    return h;
}

Graph build_graph(vertex_t n, std::span<const EdgeInput> edge_list) {
    if (n == 0) throw BadParamsError("vertex count must be positive");

    std::vector<WeightedEdge> edges;
    edges.reserve(edge_list.size());
    for (const auto& in : edge_list) {
        if (in.i >= n) throw VertexOutOfRangeError(in.i, n);
        if (in.j >= n) throw VertexOutOfRangeError(in.j, n);
        if (in.i == in.j) throw SelfLoopError(in.i);
        if (in.w < 0.0) throw NegativeWeightError(in.i, in.j, in.w);
        WeightedEdge e{std::min(in.i, in.j), std::max(in.i, in.j), in.w};
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t t = 1; t < edges.size(); ++t) {
        if (edges[t - 1].u == edges[t].u && edges[t - 1].v == edges[t].v)
            throw DuplicateEdgeError(edges[t].u, edges[t].v);
    }
    return Graph(n, std::move(edges));
}

Graph build_graph(vertex_t n, const std::vector<EdgeInput>& edge_list) {
    return build_graph(n, std::span<const EdgeInput>(edge_list));
}

Graph permute(const Graph& g, std::span<const vertex_t> perm) {
    const vertex_t n = g.vertex_count();
    if (perm.size() != n) throw BadParamsError("permutation size differs from vertex count");
    std::vector<bool> seen(n, false);
    for (vertex_t i = 0; i < n; ++i) {
        if (perm[i] >= n || seen[perm[i]])
            throw BadParamsError("not a permutation of 0..n-1");
        seen[perm[i]] = true;
    }
    std::vector<EdgeInput> relabeled;
    relabeled.reserve(g.edges().size());
    for (const auto& e : g.edges())
        relabeled.push_back({perm[e.u], perm[e.v], e.w});
    return build_graph(n, relabeled);
}

int count_components(const Graph& g) {
    const vertex_t n = g.vertex_count();
    std::vector<std::vector<vertex_t>> adj(n);
    for (const auto& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<bool> visited(n, false);
    int components = 0;
    std::queue<vertex_t> frontier;
    for (vertex_t s = 0; s < n; ++s) {
        if (visited[s]) continue;
        ++components;
        visited[s] = true;
        frontier.push(s);
        while (!frontier.empty()) {
            vertex_t u = frontier.front();
            frontier.pop();
            for (vertex_t v : adj[u]) {
                if (!visited[v]) {
                    visited[v] = true;
                    frontier.push(v);
                }
            }
        }
    }
    return components;
}

SymMatrix::SymMatrix(vertex_t dim, Storage s) : dim_(dim), storage_(s) {
    if (s == Storage::dense) {
        tri_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
    } else {
        diag_.assign(dim, 0.0);
    }
}

SymMatrix SymMatrix::make(vertex_t dim, Storage s) { return SymMatrix(dim, s); }

namespace {
inline std::size_t tri_index(vertex_t i, vertex_t j) {
    // requires i >= j
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
}
}  // namespace

void SymMatrix::add(vertex_t i, vertex_t j, double v) {
    if (i >= dim_ || j >= dim_) throw DimensionMismatchError("SymMatrix::add index");
    if (j > i) std::swap(i, j);
    if (storage_ == Storage::dense) {
        tri_[tri_index(i, j)] += v;
    } else if (i == j) {
        diag_[i] += v;
    } else {
        off_.push_back({i, j, v});
        finalized_ = false;
    }
}

void SymMatrix::finalize() {
    if (storage_ == Storage::sparse && !finalized_) {
        std::sort(off_.begin(), off_.end(), [](const Triplet& a, const Triplet& b) {
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
        // merge duplicates so "written once per pair" holds after assembly
        std::size_t out = 0;
        for (std::size_t t = 0; t < off_.size(); ++t) {
            if (out > 0 && off_[out - 1].i == off_[t].i && off_[out - 1].j == off_[t].j)
                off_[out - 1].v += off_[t].v;
            else
                off_[out++] = off_[t];
        }
        off_.resize(out);
    }
    finalized_ = true;
}

double SymMatrix::entry(vertex_t i, vertex_t j) const {
    if (i >= dim_ || j >= dim_) throw DimensionMismatchError("SymMatrix::entry index");
    if (j > i) std::swap(i, j);
    if (storage_ == Storage::dense) return tri_[tri_index(i, j)];
    if (i == j) return diag_[i];
    auto it = std::lower_bound(off_.begin(), off_.end(), std::pair<vertex_t, vertex_t>{i, j},
                               [](const Triplet& t, const std::pair<vertex_t, vertex_t>& key) {
                                   return t.i != key.first ? t.i < key.first : t.j < key.second;
                               });
    if (it != off_.end() && it->i == i && it->j == j) return it->v;
    return 0.0;
}

void SymMatrix::matvec(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw DimensionMismatchError("SymMatrix::matvec vector size");
    std::fill(y.begin(), y.end(), 0.0);
    if (storage_ == Storage::dense) {
        std::size_t idx = 0;
        for (vertex_t i = 0; i < dim_; ++i) {
            double acc = 0.0;
            const double xi = x[i];
            for (vertex_t j = 0; j < i; ++j) {
                const double a = tri_[idx++];
                acc += a * x[j];
                y[j] += a * xi;
            }
            y[i] += acc + tri_[idx++] * xi;
        }
        return;
    }
    for (vertex_t i = 0; i < dim_; ++i) y[i] = diag_[i] * x[i];
    for (const auto& t : off_) {
        // strictly lower triplets, mirrored

        y[t.i] += t.v * x[t.j];
        y[t.j] += t.v * x[t.i];
    }
}

double SymMatrix::gershgorin_bound() const {
    std::vector<double> row(dim_, 0.0);
    if (storage_ == Storage::dense) {
        std::size_t idx = 0;
        for (vertex_t i = 0; i < dim_; ++i) {
            for (vertex_t j = 0; j < i; ++j) {
                const double a = std::abs(tri_[idx++]);
                row[i] += a;
                row[j] += a;
            }
            row[i] += tri_[idx++];  // diagonal enters signed
        }
    } else {
        for (vertex_t i = 0; i < dim_; ++i) row[i] = diag_[i];
        for (const auto& t : off_) {
            row[t.i] += std::abs(t.v);
            row[t.j] += std::abs(t.v);
        }
    }
    double bound = 0.0;
    for (double r : row) bound = std::max(bound, r);
    return bound;
}

namespace {
SymMatrix::Storage pick_storage(vertex_t n, std::optional<SymMatrix::Storage> requested) {
    if (requested) return *requested;
    return n <= 2048 ? SymMatrix::Storage::dense : SymMatrix::Storage::sparse;
}
}  // namespace

SymMatrix laplacian(const Graph& g, std::optional<SymMatrix::Storage> storage) {
    SymMatrix L = SymMatrix::make(g.vertex_count(), pick_storage(g.vertex_count(), storage));
    for (const auto& e : g.edges()) {
        L.add(e.u, e.v, -e.w);
        L.add(e.u, e.u, e.w);
        L.add(e.v, e.v, e.w);
    }
    L.finalize();
    return L;
}

SymMatrix normalized_laplacian(const Graph& g, std::optional<SymMatrix::Storage> storage) {
    const auto deg = g.weighted_degrees();
    SymMatrix N = SymMatrix::make(g.vertex_count(), pick_storage(g.vertex_count(), storage));
    for (vertex_t i = 0; i < g.vertex_count(); ++i)
        if (deg[i] > 0.0) N.add(i, i, 1.0);
    for (const auto& e : g.edges()) {
        if (deg[e.u] > 0.0 && deg[e.v] > 0.0)
            N.add(e.u, e.v, -e.w / std::sqrt(deg[e.u] * deg[e.v]));
    }
    N.finalize();
    return N;
}

}  // namespace eld
