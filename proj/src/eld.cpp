#include "eld/eld.hpp"

#include <algorithm>
#include <exception>
#include <utility>

#include "eld/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eld {

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    packed_.assign(n * (n - (n > 0 ? 1 : 0)) / 2, 0.0);
}

std::size_t DistanceMatrix::slot(std::size_t i, std::size_t j) const {
    // strict upper triangle, row-major; caller guarantees i < j < size
    const std::size_t n = labels_.size();
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

double DistanceMatrix::entry(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw DimensionMismatchError("DistanceMatrix::entry");
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return packed_[slot(i, j)];
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double v) {
    if (i >= size() || j >= size()) throw DimensionMismatchError("DistanceMatrix::set");
    if (i == j) throw BadParamsError("distance matrix diagonal is fixed at zero");
    if (i > j) std::swap(i, j);
    packed_[slot(i, j)] = v;
}

std::size_t EmbeddingStore::KeyHash::operator()(const Key& key) const {
    std::uint64_t h = key.hash;
    h ^= (static_cast<std::uint64_t>(static_cast<unsigned>(key.k)) << 1) ^
         (static_cast<std::uint64_t>(static_cast<unsigned>(key.mode)) << 40);
    h *= 0x9e3779b97f4a7c15ULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
}

std::size_t EmbeddingStore::memory_entries() const {
    std::lock_guard lk(mu_);
    return map_.size();
}

std::shared_ptr<const SpectralEmbedding> EmbeddingStore::get_or_compute(
    const Graph& g, int k, LaplacianMode mode, const EmbedOptions& opts) {
    const Key key{g.content_hash(), k, static_cast<int>(mode)};

    std::promise<std::shared_ptr<const SpectralEmbedding>> promise;
    Entry entry;
    bool owner = false;
    {
        std::lock_guard lk(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) {
            entry = promise.get_future().share();
            map_.emplace(key, entry);
            owner = true;
        } else {
            entry = it->second;
        }
    }
    if (!owner) return entry.get();

    try {
        std::shared_ptr<const SpectralEmbedding> emb;
        std::filesystem::path file;
        if (dir_) {
            file = *dir_ / io::embedding_cache_name(key.hash, k, mode);
            std::error_code ec;
            if (std::filesystem::exists(file, ec)) {
                try {
                    auto cached = io::read_embedding_cache(file);
                    if (cached.n() == g.vertex_count() &&
                        cached.k() == static_cast<std::size_t>(k))
                        emb = std::make_shared<const SpectralEmbedding>(std::move(cached));
                } catch (const Error&) {
                    // unreadable or stale cache file: fall through and recompute
                }
            }
        }
        if (!emb) {
            emb = std::make_shared<const SpectralEmbedding>(embed(g, k, mode, opts));
            if (dir_) io::write_embedding_cache(*emb, file);
        }
        promise.set_value(emb);
        return emb;
    } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard lk(mu_);
        map_.erase(key);  // let a later call retry rather than caching the failure
        throw;
    }
}

namespace {

int embed_depth(const EldParams& params) {
    return params.k + (params.skip_first ? 1 : 0);
}

void validate_params(const EldParams& params) {
    if (!(params.p >= 1.0)) throw InvalidOrderError(params.p);
    if (params.k < 1) throw KTooLargeError(static_cast<std::size_t>(std::max(params.k, 0)), 0);
}

double distance_between(const SpectralEmbedding& e1, const SpectralEmbedding& e2,
                        const EldParams& params) {
    const int offset = params.skip_first ? 1 : 0;
    double acc = 0.0;
    for (int r = 0; r < params.k; ++r) {
        const Measure1D m1 = measure_from_axis(e1, offset + r);
        const Measure1D m2 = measure_from_axis(e2, offset + r);
        acc += wasserstein_1d(m1, m2, params.p);
    }
    return acc / static_cast<double>(params.k);
}

}  // namespace

double eld_distance(const SpectralEmbedding& e1, const SpectralEmbedding& e2,
                    const EldParams& params) {
    validate_params(params);
    const auto depth = static_cast<std::size_t>(embed_depth(params));
    if (e1.k() < depth || e2.k() < depth)
        throw DimensionMismatchError("embedding carries fewer axes than the distance needs");
    return distance_between(e1, e2, params);
}

double eld_distance(const Graph& g1, const Graph& g2, const EldParams& params) {
    validate_params(params);
    const int depth = embed_depth(params);
    const auto n1 = g1.vertex_count(), n2 = g2.vertex_count();
    if (static_cast<std::size_t>(depth) > std::min(n1, n2))
        throw KTooLargeError(static_cast<std::size_t>(depth), std::min(n1, n2));
    const SpectralEmbedding e1 = embed(g1, depth, params.mode, params.embed);
    const SpectralEmbedding e2 = embed(g2, depth, params.mode, params.embed);
    return distance_between(e1, e2, params);
}

namespace {

DistanceMatrix assemble_matrix(std::span<const Graph> graphs, const EldParams& params,
                               EmbeddingStore* store, std::vector<std::string> labels,
                               bool parallel) {
    validate_params(params);
    const std::size_t count = graphs.size();
    if (labels.empty()) {
        labels.reserve(count);
        for (std::size_t i = 0; i < count; ++i) labels.push_back("g" + std::to_string(i));
    }
    if (labels.size() != count)
        throw DimensionMismatchError("one label per graph expected");

    const int depth = embed_depth(params);
    for (std::size_t i = 0; i < count; ++i)
        if (static_cast<std::size_t>(depth) > graphs[i].vertex_count())
            throw KTooLargeError(static_cast<std::size_t>(depth), graphs[i].vertex_count(),
                                 labels[i]);

    DistanceMatrix dm(std::move(labels));
    if (count < 2) return dm;

    // embeddings first, each graph exactly once
    std::vector<std::shared_ptr<const SpectralEmbedding>> embs(count);
    std::exception_ptr failure = nullptr;
    auto embed_one = [&](std::size_t i) {
        embs[i] = store ? store->get_or_compute(graphs[i], depth, params.mode, params.embed)
                        : std::make_shared<const SpectralEmbedding>(
                              embed(graphs[i], depth, params.mode, params.embed));
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < count; ++i) {
            try {
                embed_one(i);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) embed_one(i);
    }
    if (failure) std::rethrow_exception(failure);

    // pair sweep; every slot is written by exactly one iteration, so the
    // parallel and serial schedules produce identical bits
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(count * (count - 1) / 2);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) pairs.emplace_back(i, j);

    auto fill_pair = [&](std::size_t t) {
        const auto [i, j] = pairs[t];
        dm.set(i, j, distance_between(*embs[i], *embs[j], params));
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            try {
                fill_pair(t);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    } else {
        for (std::size_t t = 0; t < pairs.size(); ++t) fill_pair(t);
    }
    if (failure) std::rethrow_exception(failure);
    return dm;
}

}  // namespace

DistanceMatrix distance_matrix(std::span<const Graph> graphs, const EldParams& params,
                               EmbeddingStore* store, std::vector<std::string> labels) {
    return assemble_matrix(graphs, params, store, std::move(labels), true);
}

DistanceMatrix distance_matrix_serial(std::span<const Graph> graphs, const EldParams& params,
                                      EmbeddingStore* store, std::vector<std::string> labels) {
    return assemble_matrix(graphs, params, store, std::move(labels), false);
}

}  // namespace eld
