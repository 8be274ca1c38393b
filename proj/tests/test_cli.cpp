#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "eld/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int status;
    std::string out;
};

// runs the installed CLI binary; stderr folded into stdout unless quiet
CmdResult run_cli(const std::string& args, bool merge_stderr = true) {
    const std::string cmd =
        std::string(ELD_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("eld-cli-test-" + std::to_string(::getpid()) + "-" +
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

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("dist on identical inputs prints zero") {
    TempDir tmp;
    const fs::path g = tmp.path / "g.txt";
    write_file(g, "0 1\n1 2\n2 3\n3 4\n4 5\n");
    const auto r = run_cli("dist " + g.string() + " " + g.string());
    CHECK(r.status == 0);
    CHECK(r.out == "0\n");
}

TEST_CASE("dist on the two smallest paths") {
    TempDir tmp;
    const fs::path p2 = tmp.path / "p2.txt", p3 = tmp.path / "p3.txt";
    write_file(p2, "0 1\n");
    write_file(p3, "0 1\n1 2\n");
    const auto r = run_cli("dist -k 2 -p 1 " + p2.string() + " " + p3.string());
    CHECK(r.status == 0);
    CHECK(r.out.substr(0, 6) == "0.4714");
}

TEST_CASE("dist maps oversized k to a usage error") {
    const auto r = run_cli("dist -k 10 cycle:5 cycle:5");
    CHECK(r.status == 2);
    CHECK(r.out.find("k=10") != std::string::npos);
}

TEST_CASE("dist rejects a missing file with an input error") {
    const auto r = run_cli("dist /definitely/not/here.txt cycle:4");
    CHECK(r.status == 3);
}

TEST_CASE("matrix emits CSV and JSON that re-read to the same values") {
    TempDir tmp;
    const fs::path csv = tmp.path / "m.csv", json = tmp.path / "m.json";
    const std::string inputs = "cycle:10 cycle:20 wheel:10 -k 3";
    CHECK(run_cli("matrix " + inputs + " -o " + csv.string()).status == 0);
    CHECK(run_cli("matrix " + inputs + " --format json -o " + json.string()).status == 0);

    const auto from_csv = eld::io::read_distance_matrix(eld::io::MatrixFormat::csv, csv);
    const auto from_json = eld::io::read_distance_matrix(eld::io::MatrixFormat::json, json);
    REQUIRE(from_csv.size() == 3);
    CHECK(from_csv.labels()[0] == "cycle:10");
    CHECK(from_csv.entry(0, 1) > 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(from_csv.entry(i, j) - from_json.entry(i, j)) <= 1e-10);
}

TEST_CASE("matrix heatmap sidecar") {
    TempDir tmp;
    const fs::path heat = tmp.path / "heat.dat";
    const auto r = run_cli("matrix cycle:8 cycle:16 --heatmap " + heat.string(), false);
    CHECK(r.status == 0);
    REQUIRE(fs::exists(heat));
    std::ifstream in(heat);
    std::string first;
    std::getline(in, first);
    CHECK(first == "0 0 0");
}

TEST_CASE("gen output feeds back into dist as an exact copy") {
    TempDir tmp;
    const fs::path g = tmp.path / "gen.txt";
    CHECK(run_cli("gen er:40,0.2,seed=5,exp=3 -o " + g.string()).status == 0);
    const auto r = run_cli("dist " + g.string() + " er:40,0.2,seed=5,exp=3");
    CHECK(r.status == 0);
    CHECK(std::stod(r.out) <= 1e-10);
}

TEST_CASE("gen rejects undersized families as usage errors") {
    CHECK(run_cli("gen cycle:2").status == 2);
    CHECK(run_cli("gen nonsense:2").status == 3);
}

TEST_CASE("bench requires sizes and reports one row per size") {
    CHECK(run_cli("bench --model er").status == 2);
    const auto r = run_cli("bench --model er --sizes 12,24 -k 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("size,seconds") != std::string::npos);
    CHECK(r.out.find("\n12,") != std::string::npos);
    CHECK(r.out.find("\n24,") != std::string::npos);
    const auto ba = run_cli("bench --model ba --sizes 16 -k 2");
    CHECK(ba.status == 0);
    CHECK(ba.out.find("\n16,") != std::string::npos);
}

TEST_CASE("thread count does not change the bytes") {
    const std::string args = "matrix cycle:14 cycle:28 wheel:14 roc:3,4 -k 4";
    const auto one = run_cli(args + " --threads 1", false);
    const auto two = run_cli(args + " --threads 2", false);
    CHECK(one.status == 0);
    CHECK(two.status == 0);
    CHECK(one.out == two.out);
    CHECK(one.out.rfind("label,", 0) == 0);
}

TEST_CASE("matrix cache directory fills and is reused") {
    TempDir tmp;
    const fs::path cache = tmp.path / "cache";
    const std::string args = "matrix cycle:18 wheel:18 --cache " + cache.string();
    const auto first = run_cli(args, false);
    CHECK(first.status == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(cache)) {
        CHECK(entry.path().extension() == ".elde");
        ++files;
    }
    CHECK(files == 2);
    const auto second = run_cli(args, false);
    CHECK(second.status == 0);
    CHECK(second.out == first.out);
}

TEST_CASE("embed writes a cache file the library reads back") {
    TempDir tmp;
    const fs::path out = tmp.path / "emb.elde";
    CHECK(run_cli("embed cycle:24 -k 6 -o " + out.string()).status == 0);
    const auto emb = eld::io::read_embedding_cache(out);
    CHECK(emb.n() == 24);
    CHECK(emb.k() == 6);
    CHECK(emb.eigenvalue(0) == 0.0);
}

TEST_CASE("help exits zero") {
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("dist --help").status == 0);
}
