// Times the OpenMP distance-matrix kernel against the serial reference
// and verifies the two produce bitwise-identical results.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "eld/eld.hpp"
#include "eld/generators.hpp"

using namespace eld;

namespace {

double seconds_of(const std::chrono::steady_clock::time_point& t0) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compare the parallel distance-matrix kernel with the serial reference"};
    std::vector<std::size_t> sizes{40, 80, 160};
    std::size_t count = 12;
    int k = 5;
    app.add_option("--sizes", sizes, "comma-separated vertex counts")->delimiter(',');
    app.add_option("--count", count, "graphs per size")->capture_default_str();
    app.add_option("-k", k, "embedding depth")->capture_default_str();

    try {
        app.parse(argc, argv);

        EldParams params;
        params.k = k;

        std::printf("%8s %10s %12s %12s %9s %7s\n", "size", "graphs", "serial[s]",
                    "parallel[s]", "speedup", "match");
        bool all_match = true;
        for (std::size_t size : sizes) {
            std::vector<Graph> graphs;
            for (std::uint64_t seed = 0; seed < count; ++seed)
                graphs.push_back(gen::erdos_renyi(static_cast<vertex_t>(size), 0.1, seed, 4.0));

            auto t0 = std::chrono::steady_clock::now();
            const DistanceMatrix serial = distance_matrix_serial(graphs, params);
            const double serial_s = seconds_of(t0);

            t0 = std::chrono::steady_clock::now();
            const DistanceMatrix parallel = distance_matrix(graphs, params);
            const double parallel_s = seconds_of(t0);

            const auto& a = serial.packed();
            const auto& b = parallel.packed();
            const bool match = a.size() == b.size() &&
                               std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
            all_match = all_match && match;

            std::printf("%8zu %10zu %12.4f %12.4f %8.2fx %7s\n", size, count, serial_s,
                        parallel_s, parallel_s > 0.0 ? serial_s / parallel_s : 0.0,
                        match ? "yes" : "NO");
        }
        if (!all_match) {
            std::fprintf(stderr, "parallel and serial kernels disagree\n");
            return 1;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
