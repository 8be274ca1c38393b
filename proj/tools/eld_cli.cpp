#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eld/eld.hpp"
#include "eld/generators.hpp"
#include "eld/io.hpp"

using namespace eld;

namespace {

struct CommonOpts {
    int k = 5;
    double p = 1.0;
    std::string mode = "comb";
    bool skip_first = false;
    std::size_t sparse_threshold = 2048;
    std::uint64_t seed = 0;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-k", o.k, "embedding depth")->capture_default_str();
    cmd->add_option("-p", o.p, "transport order (>= 1)")->capture_default_str();
    cmd->add_option("--mode", o.mode, "Laplacian: comb or norm")
        ->check(CLI::IsMember({"comb", "norm"}))
        ->capture_default_str();
    cmd->add_flag("--skip-first", o.skip_first, "drop the constant-eigenvector axis");
    cmd->add_option("--sparse-threshold", o.sparse_threshold,
                    "vertex count above which the iterative solver runs")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "base seed for benchmark graphs")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads (0 = runtime default)");
}

void apply_threads(const CommonOpts& o) {
#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#else
    (void)o;
#endif
}

EldParams params_from(const CommonOpts& o) {
    EldParams params;
    params.k = o.k;
    params.p = o.p;
    params.mode = o.mode == "norm" ? LaplacianMode::normalized : LaplacianMode::combinatorial;
    params.skip_first = o.skip_first;
    params.embed.sparse_threshold = o.sparse_threshold;
    return params;
}

// inputs are edge-list paths or generator spec strings like "cycle:30"
Graph load_input(const std::string& text) {
    if (gen::GeneratorSpec::looks_like_spec(text))
        return gen::GeneratorSpec::parse(text).build();
    return io::read_edge_list(std::filesystem::path(text));
}

int run(int argc, char** argv) {
    CLI::App app{"spectral graph distances via exact 1D optimal transport"};
    app.require_subcommand(1);

    auto* dist = app.add_subcommand("dist", "distance between two graphs");
    CommonOpts dist_opts;
    std::vector<std::string> dist_inputs;
    add_common(dist, dist_opts);
    dist->add_option("inputs", dist_inputs, "two edge-list paths or generator specs")
        ->expected(2)
        ->required();
    dist->callback([&] {
        apply_threads(dist_opts);
        const Graph a = load_input(dist_inputs[0]);
        const Graph b = load_input(dist_inputs[1]);
        std::cout << io::format_double(eld_distance(a, b, params_from(dist_opts))) << "\n";
    });

    auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix");
    CommonOpts matrix_opts;
    std::vector<std::string> matrix_inputs;
    std::string matrix_out, matrix_format = "csv", matrix_heatmap, matrix_cache;
    add_common(matrix, matrix_opts);
    matrix->add_option("inputs", matrix_inputs, "edge-list paths or generator specs")
        ->required();
    matrix->add_option("-o,--output", matrix_out, "output file (default stdout)");
    matrix->add_option("--format", matrix_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    matrix->add_option("--heatmap", matrix_heatmap, "also write gnuplot triples here");
    matrix->add_option("--cache", matrix_cache,
                       "embedding cache directory (default $ELD_CACHE_DIR)");
    matrix->callback([&] {
        apply_threads(matrix_opts);
        std::vector<Graph> graphs;
        graphs.reserve(matrix_inputs.size());
        for (const auto& text : matrix_inputs) graphs.push_back(load_input(text));

        std::string cache_dir = matrix_cache;
        if (cache_dir.empty())
            if (const char* env = std::getenv("ELD_CACHE_DIR")) cache_dir = env;
        EmbeddingStore store = cache_dir.empty() ? EmbeddingStore() : [&] {
            std::filesystem::create_directories(cache_dir);
            return EmbeddingStore(cache_dir);
        }();

        DistanceMatrix dm =
            distance_matrix(graphs, params_from(matrix_opts), &store, matrix_inputs);
        const auto format = matrix_format == "json" ? io::MatrixFormat::json
                                                    : io::MatrixFormat::csv;
        if (matrix_out.empty())
            io::write_distance_matrix(dm, format, std::cout);
        else
            io::write_distance_matrix(dm, format, std::filesystem::path(matrix_out));
        if (!matrix_heatmap.empty()) io::write_heatmap(dm, matrix_heatmap);
    });

    auto* gen_cmd = app.add_subcommand("gen", "generate a graph as an edge list");
    std::string gen_spec, gen_out;
    gen_cmd->add_option("spec", gen_spec, "generator spec, e.g. er:100,0.3,seed=7")
        ->required();
    gen_cmd->add_option("-o,--output", gen_out, "output file (default stdout)");
    gen_cmd->callback([&] {
        const Graph g = gen::GeneratorSpec::parse(gen_spec).build();
        if (gen_out.empty())
            io::write_edge_list(g, std::cout);
        else
            io::write_edge_list(g, std::filesystem::path(gen_out));
    });

    auto* bench = app.add_subcommand("bench", "time pairwise distances over graph sizes");
    CommonOpts bench_opts;
    std::string bench_model = "er", bench_out;
    std::vector<std::size_t> bench_sizes;
    add_common(bench, bench_opts);
    bench->add_option("--model", bench_model, "random model: er or ba")
        ->check(CLI::IsMember({"er", "ba"}))
        ->capture_default_str();
    bench->add_option("--sizes", bench_sizes, "comma-separated vertex counts")
        ->delimiter(',')
        ->required();
    bench->add_option("-o,--output", bench_out, "output file (default stdout)");
    bench->callback([&] {
        apply_threads(bench_opts);
        const EldParams params = params_from(bench_opts);
        std::string table = "size,seconds\n";
        for (std::size_t size : bench_sizes) {
            std::vector<Graph> graphs;
            for (std::uint64_t i = 0; i < 10; ++i) {
                const std::uint64_t seed = bench_opts.seed + i;
                graphs.push_back(bench_model == "ba"
                                     ? gen::barabasi_albert(static_cast<vertex_t>(size), 3, seed)
                                     : gen::erdos_renyi(static_cast<vertex_t>(size), 0.03, seed));
            }
            const auto t0 = std::chrono::steady_clock::now();
            distance_matrix(graphs, params);
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            table += std::to_string(size) + "," + io::format_double(dt.count()) + "\n";
        }
        if (bench_out.empty()) {
            std::cout << table;
        } else {
            std::ofstream out(bench_out);
            if (!(out << table)) throw IoError("cannot write '" + bench_out + "'");
        }
    });

    auto* embed_cmd = app.add_subcommand("embed", "write a graph's embedding cache file");
    CommonOpts embed_opts;
    std::string embed_input, embed_out;
    add_common(embed_cmd, embed_opts);
    embed_cmd->add_option("input", embed_input, "edge-list path or generator spec")->required();
    embed_cmd->add_option("-o,--output", embed_out, "output .elde file")->required();
    embed_cmd->callback([&] {
        apply_threads(embed_opts);
        const Graph g = load_input(embed_input);
        EmbedOptions opts;
        opts.sparse_threshold = embed_opts.sparse_threshold;
        const auto mode = embed_opts.mode == "norm" ? LaplacianMode::normalized
                                                    : LaplacianMode::combinatorial;
        io::write_embedding_cache(embed(g, embed_opts.k, mode, opts), embed_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const KTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidOrderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TooSmallError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadProbabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadScaleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadParamsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceFailureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const AllZeroVectorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        // parse, IO, graph validation, cache-format problems
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
