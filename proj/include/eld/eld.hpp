#pragma once

#include <cstdint>
#include <filesystem>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "eld/spectral.hpp"
#include "eld/transport.hpp"

namespace eld {

struct EldParams {
    int k = 5;
    double p = 1.0;
    LaplacianMode mode = LaplacianMode::combinatorial;
    /// When true, the trivial first eigenvector is dropped: the embedding
    /// is taken one axis deeper and axes 1..k (0-indexed) are averaged.
    bool skip_first = false;
    EmbedOptions embed;
};

/// Symmetric distance matrix with zero diagonal; each unordered pair is
/// stored exactly once (packed strict upper triangle).
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    double entry(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double v);  // i != j

    const std::vector<double>& packed() const { return packed_; }

private:
    std::size_t slot(std::size_t i, std::size_t j) const;
    std::vector<std::string> labels_;
    std::vector<double> packed_;  // strict upper triangle, row-major
};

/// Shared embedding cache keyed by (graph content hash, k, mode).
/// Thread-safe insert-once / read-many. When a directory is supplied,
/// embeddings are also persisted there and picked up across runs.
class EmbeddingStore {
public:
    EmbeddingStore() = default;
    explicit EmbeddingStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::shared_ptr<const SpectralEmbedding> get_or_compute(
        const Graph& g, int k, LaplacianMode mode, const EmbedOptions& opts = {});

    std::size_t memory_entries() const;

private:
    struct Key {
        std::uint64_t hash;
        int k;
        int mode;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const;
    };

    using Entry = std::shared_future<std::shared_ptr<const SpectralEmbedding>>;
    mutable std::mutex mu_;
    std::unordered_map<Key, Entry, KeyHash> map_;  // first caller computes, rest wait
    std::optional<std::filesystem::path> dir_;
};

/// Average over the first k axes of the exact order-p Wasserstein
/// distance between the eigenvalue-weighted coordinate measures.
/// Symmetric and deterministic. Throws KTooLargeError when the embedding
/// depth exceeds either vertex count, InvalidOrderError when p < 1.
double eld_distance(const Graph& g1, const Graph& g2, const EldParams& params = {});

/// Same distance from precomputed embeddings (must carry at least
/// k (+1 with skip_first) axes).
double eld_distance(const SpectralEmbedding& e1, const SpectralEmbedding& e2,
                    const EldParams& params = {});

/// All pairwise distances; each graph is embedded exactly once (through
/// `store` when given, so other callers can reuse the work). Labels
/// default to "g0", "g1", ... Pair evaluation runs in parallel; results
/// are bitwise identical to distance_matrix_serial.
DistanceMatrix distance_matrix(std::span<const Graph> graphs, const EldParams& params = {},
                               EmbeddingStore* store = nullptr,
                               std::vector<std::string> labels = {});

/// Single-threaded reference implementation with identical output.
DistanceMatrix distance_matrix_serial(std::span<const Graph> graphs,
                                      const EldParams& params = {},
                                      EmbeddingStore* store = nullptr,
                                      std::vector<std::string> labels = {});

}  // namespace eld
