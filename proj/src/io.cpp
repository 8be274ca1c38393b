#include "eld/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace eld::io {

std::string format_double(double v) {
    char buf[64];
    auto shortest = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, shortest.ptr);
    // count significant digits of the shortest form; recap at 12 if longer
    std::size_t digits = 0;
    bool counting = false;
    for (char ch : s) {
        if (ch == 'e' || ch == 'E') break;
        if (ch >= '1' && ch <= '9') counting = true;
        if (counting && ch >= '0' && ch <= '9') ++digits;
    }
    if (digits <= 12) return s;
    auto capped = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, capped.ptr);
}

namespace {

double parse_double_token(std::string_view tok, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("bad number '" + std::string(tok) + "'", line);
    return value;
}

std::uint64_t parse_id_token(std::string_view tok, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("bad vertex id '" + std::string(tok) + "'", line);
    if (value > 0xffffffffULL)
        throw ParseError("vertex id '" + std::string(tok) + "' too large", line);
    return value;
}

std::vector<std::string_view> whitespace_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::vector<EdgeInput> edges;
    std::map<std::pair<vertex_t, vertex_t>, std::size_t> seen;  // pair -> first line
    std::uint64_t max_id = 0;
    bool any_vertex = false;
    std::optional<std::uint64_t> pinned_n;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            if (sv.rfind("#n=", 0) == 0) pinned_n = parse_id_token(sv.substr(3), line_no);
            continue;
        }
        const auto toks = whitespace_tokens(sv);
        if (toks.empty()) continue;
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError("expected 'i j' or 'i j w', got " + std::to_string(toks.size()) +
                                 " fields",
                             line_no);
        const std::uint64_t a = parse_id_token(toks[0], line_no);
        const std::uint64_t b = parse_id_token(toks[1], line_no);
        const double w = toks.size() == 3 ? parse_double_token(toks[2], line_no) : 1.0;
        if (a == b) throw SelfLoopError(static_cast<vertex_t>(a), line_no);
        if (w < 0.0)
            throw NegativeWeightError(static_cast<vertex_t>(a), static_cast<vertex_t>(b), w,
                                      line_no);
        const vertex_t lo = static_cast<vertex_t>(std::min(a, b));
        const vertex_t hi = static_cast<vertex_t>(std::max(a, b));
        if (!seen.emplace(std::pair{lo, hi}, line_no).second)
            throw DuplicateEdgeError(lo, hi, line_no);
        if (pinned_n) {
            if (a >= *pinned_n)
                throw VertexOutOfRangeError(static_cast<vertex_t>(a),
                                            static_cast<vertex_t>(*pinned_n), line_no);
            if (b >= *pinned_n)
                throw VertexOutOfRangeError(static_cast<vertex_t>(b),
                                            static_cast<vertex_t>(*pinned_n), line_no);
        }
        max_id = std::max({max_id, a, b});
        any_vertex = true;
        edges.push_back({static_cast<vertex_t>(a), static_cast<vertex_t>(b), w});
    }

    std::uint64_t n = any_vertex ? max_id + 1 : 0;
    if (pinned_n) n = std::max(n, *pinned_n);
    if (n == 0) throw ParseError("edge list describes no vertices (add edges or a #n= line)");
    if (n > 0xffffffffULL) throw ParseError("vertex count exceeds the supported range");
    return build_graph(static_cast<vertex_t>(n), edges);
}

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "#n=" << g.vertex_count() << "\n";
    for (const auto& e : g.edges())
        out << e.u << " " << e.v << " " << format_double(e.w) << "\n";
    if (!out) throw IoError("edge list write failed");
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_edge_list(g, out);
}

namespace {

bool needs_csv_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_quote(const std::string& s) {
    if (!needs_csv_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// one CSV record; understands quoted fields with doubled quotes
std::vector<std::string> csv_fields(const std::string& line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty()) throw ParseError("stray quote inside field", line_no);
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
        ++i;
    }
    if (quoted) throw ParseError("unterminated quoted field", line_no);
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

void write_distance_matrix(const DistanceMatrix& dm, MatrixFormat format, std::ostream& out) {
    const std::size_t n = dm.size();
    if (format == MatrixFormat::csv) {
        out << "label";
        for (std::size_t j = 0; j < n; ++j) out << "," << csv_quote(dm.labels()[j]);
        out << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            out << csv_quote(dm.labels()[i]);
            for (std::size_t j = 0; j < n; ++j) out << "," << format_double(dm.entry(i, j));
            out << "\n";
        }
    } else {
        nlohmann::json j;
        j["labels"] = dm.labels();
        auto rows = nlohmann::json::array();
        for (std::size_t i = 0; i < n; ++i) {
            auto row = nlohmann::json::array();
            for (std::size_t c = 0; c < n; ++c) row.push_back(dm.entry(i, c));
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
    }
    if (!out) throw IoError("distance matrix write failed");
}

void write_distance_matrix(const DistanceMatrix& dm, MatrixFormat format,
                           const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_distance_matrix(dm, format, out);
}

DistanceMatrix read_distance_matrix(MatrixFormat format, std::istream& in) {
    if (format == MatrixFormat::csv) {
        std::string line;
        if (!std::getline(in, line)) throw ParseError("empty distance matrix file", 1);
        auto header = csv_fields(line, 1);
        if (header.empty() || header[0] != "label")
            throw ParseError("first CSV cell must be 'label'", 1);
        std::vector<std::string> labels(header.begin() + 1, header.end());
        DistanceMatrix dm(labels);
        const std::size_t n = labels.size();
        std::size_t line_no = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::getline(in, line))
                throw ParseError("expected " + std::to_string(n) + " data rows", line_no);
            ++line_no;
            auto fields = csv_fields(line, line_no);
            if (fields.size() != n + 1)
                throw ParseError("expected " + std::to_string(n + 1) + " fields", line_no);
            if (fields[0] != labels[i])
                throw ParseError("row label '" + fields[0] + "' does not match header",
                                 line_no);
            for (std::size_t j = i + 1; j < n; ++j)
                dm.set(i, j, parse_double_token(fields[j + 1], line_no));
        }
        return dm;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!j.contains("labels") || !j.contains("rows"))
        throw ParseError("JSON distance matrix needs 'labels' and 'rows'");
    std::vector<std::string> labels = j["labels"].get<std::vector<std::string>>();
    DistanceMatrix dm(labels);
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != labels.size())
        throw ParseError("JSON 'rows' must be a square matrix matching 'labels'");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != labels.size())
            throw ParseError("JSON row " + std::to_string(i) + " has the wrong length");
        for (std::size_t c = i + 1; c < labels.size(); ++c)
            dm.set(i, c, rows[i][c].get<double>());
    }
    return dm;
}

DistanceMatrix read_distance_matrix(MatrixFormat format, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_distance_matrix(format, in);
}

void write_heatmap(const DistanceMatrix& dm, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    const std::size_t n = dm.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            out << i << " " << j << " " << format_double(dm.entry(i, j)) << "\n";
        if (i + 1 < n) out << "\n";
    }
    if (!out) throw IoError("heatmap write failed");
}

namespace {

constexpr char kMagic[4] = {'E', 'L', 'D', 'E'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& buf, std::uint16_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_f64(std::string& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(buf, bits);
}

struct ByteReader {
    const unsigned char* p;
    std::size_t left;
    void need(std::size_t n) {
        if (left < n)
            throw CacheFormatError(CacheFormatError::Kind::truncated,
                                   "embedding cache file is truncated");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
        p += 2;
        left -= 2;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
        p += 8;
        left -= 8;
        return v;
    }
    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
};

}  // namespace

void write_embedding_cache(const SpectralEmbedding& emb, const std::filesystem::path& path) {
    std::string buf;
    buf.reserve(4 + 2 + 16 + 8 * (emb.k() + emb.n() * emb.k()));
    buf.append(kMagic, 4);
    put_u16(buf, kVersion);
    put_u64(buf, emb.n());
    put_u64(buf, emb.k());
    for (double v : emb.eigenvalues()) put_f64(buf, v);
    for (double v : emb.vectors()) put_f64(buf, v);

    // write to a sibling temp file, then rename into place
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move temp file into '" + path.string() + "'");
    }
}

SpectralEmbedding read_embedding_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    ByteReader rd{reinterpret_cast<const unsigned char*>(data.data()), data.size()};
    rd.need(4);
    if (std::memcmp(rd.p, kMagic, 4) != 0)
        throw CacheFormatError(CacheFormatError::Kind::bad_magic,
                               "'" + path.string() + "' is not an embedding cache file");
    rd.p += 4;
    rd.left -= 4;
    const std::uint16_t version = rd.u16();
    if (version != kVersion)
        throw CacheFormatError(CacheFormatError::Kind::version_mismatch,
                               "embedding cache version " + std::to_string(version) +
                                   " unsupported (expected " + std::to_string(kVersion) + ")");
    const std::uint64_t n = rd.u64();
    const std::uint64_t k = rd.u64();
    if (k > 0 && n > (std::size_t(-1) / sizeof(double)) / k)
        throw CacheFormatError(CacheFormatError::Kind::truncated,
                               "embedding cache header describes an impossible size");
    std::vector<double> eigenvalues(k);
    for (auto& v : eigenvalues) v = rd.f64();
    std::vector<double> vectors(n * k);
    for (auto& v : vectors) v = rd.f64();
    return SpectralEmbedding::from_parts(n, k, std::move(eigenvalues), std::move(vectors));
}

std::filesystem::path embedding_cache_name(std::uint64_t content_hash, int k,
                                           LaplacianMode mode) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(content_hash));
    return std::filesystem::path(std::string(hex) + "-k" + std::to_string(k) +
                                 (mode == LaplacianMode::combinatorial ? "-comb" : "-norm") +
                                 ".elde");
}

}  // namespace eld::io
