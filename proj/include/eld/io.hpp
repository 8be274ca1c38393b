#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eld/eld.hpp"
#include "eld/graph.hpp"
#include "eld/spectral.hpp"

namespace eld::io {

/// Shortest decimal string that reads back to the same double, capped at
/// 12 significant digits.
std::string format_double(double v);

/// Edge-list text format: one edge per line as "i j" or "i j w";
/// '#'-lines and blank lines are ignored, except that a "#n=<N>"
/// directive pins the vertex count (otherwise n = 1 + max id).
Graph read_edge_list(const std::filesystem::path& path);
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);

enum class MatrixFormat { csv, json };

/// CSV: corner cell "label", then a header row of labels, then one
/// label-prefixed row per graph. JSON: {"labels": [...], "rows": [[...]]}.
void write_distance_matrix(const DistanceMatrix& dm, MatrixFormat format,
                           const std::filesystem::path& path);
void write_distance_matrix(const DistanceMatrix& dm, MatrixFormat format, std::ostream& out);
DistanceMatrix read_distance_matrix(MatrixFormat format, const std::filesystem::path& path);
DistanceMatrix read_distance_matrix(MatrixFormat format, std::istream& in);

/// gnuplot-ready triples "i j value", one blank line between row blocks.
void write_heatmap(const DistanceMatrix& dm, const std::filesystem::path& path);

/// Embedding cache binary format: magic "ELDE", u16 version (= 1),
/// u64 n, u64 k, k little-endian doubles (eigenvalues), n*k little-endian
/// doubles (eigenvectors, column-major). Round-trips bit-exactly.
/// Reads throw CacheFormatError (bad magic / version / truncation).
void write_embedding_cache(const SpectralEmbedding& emb, const std::filesystem::path& path);
SpectralEmbedding read_embedding_cache(const std::filesystem::path& path);

/// Cache file name for a (graph, k, mode) triple inside a cache dir.
std::filesystem::path embedding_cache_name(std::uint64_t content_hash, int k,
                                           LaplacianMode mode);

}  // namespace eld::io
