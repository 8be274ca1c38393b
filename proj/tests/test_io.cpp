#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eld/eld.hpp"
#include "eld/generators.hpp"
#include "eld/io.hpp"
#include "eld/spectral.hpp"

using namespace eld;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("eld-io-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("format_double") {
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(2.0) == "2");
    CHECK(io::format_double(2.5) == "2.5");
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(-1.25) == "-1.25");
    CHECK(io::format_double(1.0 / 3.0) == "0.333333333333");

    // capped strings still read back very close to the original
    for (double v : {1.0 / 3.0, std::sqrt(2.0), 0.4714045207910317, 1e-7 * std::sqrt(3.0)}) {
        const double back = std::stod(io::format_double(v));
        CHECK(std::abs(back - v) <= 1e-11 * std::abs(v));
    }
    // short values round-trip bit-exactly
    for (double v : {0.5, 3.75, -12.0, 1e300, 2e-12}) {
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("read_edge_list basics") {
    std::istringstream p3("0 1\n1 2\n");
    Graph g = io::read_edge_list(p3);
    CHECK(g.vertex_count() == 3);
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0].w == 1.0);
    CHECK(g.edges()[1].w == 1.0);

    std::istringstream weighted("0 1 2.5\n");
    Graph w = io::read_edge_list(weighted);
    CHECK(w.vertex_count() == 2);
    REQUIRE(w.edges().size() == 1);
    CHECK(w.edges()[0].w == 2.5);
}

TEST_CASE("read_edge_list comments, blanks, and the #n= directive") {
    std::istringstream text(
        "# a comment\n"
        "\n"
        "2 0 1.5\n"
        "   \n"
        "#n=5\n"
        "0 1\n");
    Graph g = io::read_edge_list(text);
    CHECK(g.vertex_count() == 5);  // two trailing isolated vertices
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
    CHECK(g.edges()[1].u == 0);
    CHECK(g.edges()[1].v == 2);
    CHECK(g.edges()[1].w == 1.5);
}

TEST_CASE("read_edge_list reports offending line numbers") {
    std::istringstream selfloop("0 0\n");
    CHECK_THROWS_WITH_AS(io::read_edge_list(selfloop),
                         doctest::Contains("line 1"), SelfLoopError);

    std::istringstream dup("0 1\n# fine\n1 0 3\n");
    CHECK_THROWS_WITH_AS(io::read_edge_list(dup),
                         doctest::Contains("line 3"), DuplicateEdgeError);

    std::istringstream neg("0 1 -2\n");
    CHECK_THROWS_AS(io::read_edge_list(neg), NegativeWeightError);

    std::istringstream oob("#n=2\n0 2\n");
    CHECK_THROWS_WITH_AS(io::read_edge_list(oob),
                         doctest::Contains("line 2"), VertexOutOfRangeError);

    std::istringstream short_line("0\n");
    CHECK_THROWS_AS(io::read_edge_list(short_line), ParseError);
    std::istringstream junk("a b\n");
    CHECK_THROWS_AS(io::read_edge_list(junk), ParseError);
    std::istringstream extra("0 1 2 3\n");
    CHECK_THROWS_AS(io::read_edge_list(extra), ParseError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(io::read_edge_list(empty), ParseError);

    CHECK_THROWS_AS(io::read_edge_list(fs::path("/no/such/file")), IoError);
}

TEST_CASE("edge list round trip preserves the graph up to formatting") {
    Graph g = gen::erdos_renyi(24, 0.3, 11, 2.0);
    std::ostringstream out;
    io::write_edge_list(g, out);
    std::istringstream in(out.str());
    Graph back = io::read_edge_list(in);

    CHECK(back.vertex_count() == g.vertex_count());
    REQUIRE(back.edges().size() == g.edges().size());
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        CHECK(back.edges()[i].u == g.edges()[i].u);
        CHECK(back.edges()[i].v == g.edges()[i].v);
        CHECK(back.edges()[i].w ==
              doctest::Approx(g.edges()[i].w).epsilon(1e-11));
    }
    // weights may move in the 12th digit, the distance must not
    CHECK(eld_distance(g, back) <= 1e-10);

    // isolated trailing vertex survives via the directive
    Graph iso = build_graph(4, std::vector<EdgeInput>{{0, 1, 1.0}});
    std::ostringstream out2;
    io::write_edge_list(iso, out2);
    CHECK(out2.str().find("#n=4") != std::string::npos);
    std::istringstream in2(out2.str());
    CHECK(io::read_edge_list(in2).vertex_count() == 4);
}

TEST_CASE("distance matrix CSV shape") {
    DistanceMatrix one(std::vector<std::string>{"G1"});
    std::ostringstream out;
    io::write_distance_matrix(one, io::MatrixFormat::csv, out);
    CHECK(out.str() == "label,G1\nG1,0\n");
}

TEST_CASE("distance matrix round trips in both formats") {
    // labels deliberately include commas and a quote to stress CSV quoting
    DistanceMatrix dm(std::vector<std::string>{"er:100,0.8,seed=7", "b\"q", "plain"});
    dm.set(0, 1, 0.4714045207910317);
    dm.set(0, 2, 1.0 / 3.0);
    dm.set(1, 2, 2e-11);

    for (auto format : {io::MatrixFormat::csv, io::MatrixFormat::json}) {
        std::ostringstream out;
        io::write_distance_matrix(dm, format, out);
        std::istringstream in(out.str());
        DistanceMatrix back = io::read_distance_matrix(format, in);
        REQUIRE(back.size() == 3);
        CHECK(back.labels() == dm.labels());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(back.entry(i, j) == doctest::Approx(dm.entry(i, j)).epsilon(1e-10));
    }

    // the two formats agree entrywise after parsing
    std::ostringstream csv_out, json_out;
    io::write_distance_matrix(dm, io::MatrixFormat::csv, csv_out);
    io::write_distance_matrix(dm, io::MatrixFormat::json, json_out);
    std::istringstream csv_in(csv_out.str()), json_in(json_out.str());
    DistanceMatrix from_csv = io::read_distance_matrix(io::MatrixFormat::csv, csv_in);
    DistanceMatrix from_json = io::read_distance_matrix(io::MatrixFormat::json, json_in);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(from_csv.entry(i, j) - from_json.entry(i, j)) <= 1e-10);
}

TEST_CASE("distance matrix readers reject malformed input") {
    std::istringstream missing_row("label,A,B\nA,0,1\n");
    CHECK_THROWS_AS(io::read_distance_matrix(io::MatrixFormat::csv, missing_row), ParseError);
    std::istringstream label_mismatch("label,A,B\nA,0,1\nC,1,0\n");
    CHECK_THROWS_AS(io::read_distance_matrix(io::MatrixFormat::csv, label_mismatch), ParseError);
    std::istringstream not_json("hello");
    CHECK_THROWS_AS(io::read_distance_matrix(io::MatrixFormat::json, not_json), ParseError);
    CHECK_THROWS_AS(io::read_distance_matrix(io::MatrixFormat::csv, fs::path("/no/such/file")),
                    IoError);
}

TEST_CASE("heatmap triples") {
    TempDir tmp;
    DistanceMatrix dm(std::vector<std::string>{"a", "b"});
    dm.set(0, 1, 0.5);
    const fs::path path = tmp.path / "heat.dat";
    io::write_heatmap(dm, path);
    CHECK(slurp(path) == "0 0 0\n0 1 0.5\n\n1 0 0.5\n1 1 0\n");
}

TEST_CASE("embedding cache round trip is bit-exact") {
    TempDir tmp;
    Graph g = gen::erdos_renyi(17, 0.4, 3, 1.0);
    SpectralEmbedding emb = embed(g, 6);
    const fs::path path = tmp.path / "emb.elde";
    io::write_embedding_cache(emb, path);
    SpectralEmbedding back = io::read_embedding_cache(path);

    REQUIRE(back.n() == emb.n());
    REQUIRE(back.k() == emb.k());
    CHECK(std::memcmp(back.eigenvalues().data(), emb.eigenvalues().data(),
                      emb.k() * sizeof(double)) == 0);
    CHECK(std::memcmp(back.vectors().data(), emb.vectors().data(),
                      emb.n() * emb.k() * sizeof(double)) == 0);
}

TEST_CASE("embedding cache rejects corrupt files") {
    TempDir tmp;
    Graph g = gen::cycle(6);
    SpectralEmbedding emb = embed(g, 3);
    const fs::path good = tmp.path / "good.elde";
    io::write_embedding_cache(emb, good);
    const std::string bytes = slurp(good);

    {
        std::string bad = bytes;
        bad[0] = 'X';
        const fs::path p = tmp.path / "magic.elde";
        spit(p, bad);
        try {
            io::read_embedding_cache(p);
            FAIL("expected CacheFormatError");
        } catch (const CacheFormatError& e) {
            CHECK(e.kind == CacheFormatError::Kind::bad_magic);
        }
    }
    {
        std::string bad = bytes;
        bad[4] = static_cast<char>(9);  // version field
        const fs::path p = tmp.path / "version.elde";
        spit(p, bad);
        try {
            io::read_embedding_cache(p);
            FAIL("expected CacheFormatError");
        } catch (const CacheFormatError& e) {
            CHECK(e.kind == CacheFormatError::Kind::version_mismatch);
        }
    }
    {
        std::string bad = bytes.substr(0, bytes.size() - 5);
        const fs::path p = tmp.path / "short.elde";
        spit(p, bad);
        try {
            io::read_embedding_cache(p);
            FAIL("expected CacheFormatError");
        } catch (const CacheFormatError& e) {
            CHECK(e.kind == CacheFormatError::Kind::truncated);
        }
    }
    {
        const fs::path p = tmp.path / "tiny.elde";
        spit(p, "EL");
        CHECK_THROWS_AS(io::read_embedding_cache(p), CacheFormatError);
    }
}

TEST_CASE("embedding cache file names") {
    const auto name = io::embedding_cache_name(0x1234abcdULL, 5, LaplacianMode::combinatorial);
    CHECK(name.string() == "000000001234abcd-k5-comb.elde");
    const auto norm = io::embedding_cache_name(~0ULL, 12, LaplacianMode::normalized);
    CHECK(norm.string() == "ffffffffffffffff-k12-norm.elde");
}
