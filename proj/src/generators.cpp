#include "eld/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <vector>

#include "eld/io.hpp"

namespace eld::gen {

Graph cycle(std::uint32_t n) {
    if (n < 3) throw TooSmallError("cycle needs n >= 3, got " + std::to_string(n));
    std::vector<EdgeInput> edges;
    edges.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
    return build_graph(n, edges);
}

Graph wheel(std::uint32_t n) {
    if (n < 4) throw TooSmallError("wheel needs n >= 4, got " + std::to_string(n));
    std::vector<EdgeInput> edges;
    edges.reserve(2 * (n - 1));
    for (std::uint32_t i = 1; i < n; ++i) edges.push_back({0, i, 1.0});       // spokes
    for (std::uint32_t i = 1; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});  // rim
    edges.push_back({n - 1, 1, 1.0});
    return build_graph(n, edges);
}

Graph ring_of_cliques(std::uint32_t c, std::uint32_t s) {
    if (c < 2) throw TooSmallError("ring of cliques needs c >= 2, got " + std::to_string(c));
    if (s < 2) throw TooSmallError("ring of cliques needs s >= 2, got " + std::to_string(s));
    std::vector<EdgeInput> edges;
    edges.reserve(static_cast<std::size_t>(c) * s * (s - 1) / 2 + c);
    for (std::uint32_t q = 0; q < c; ++q) {
        const std::uint32_t base = q * s;
        for (std::uint32_t a = 0; a < s; ++a)
            for (std::uint32_t b = a + 1; b < s; ++b)
                edges.push_back({base + a, base + b, 1.0});
    }
    // bridge leaves clique q at its second vertex and enters clique q+1 at its
    // first, so the two bridge endpoints inside a clique are distinct vertices
    for (std::uint32_t q = 0; q < c; ++q)
        edges.push_back({q * s + 1, ((q + 1) % c) * s, 1.0});
    return build_graph(c * s, edges);
}

namespace {

// one uniform draw in [0, 1); mt19937_64 output is identical on every
// conforming platform, so graphs reproduce bit-for-bit
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Graph erdos_renyi(std::uint32_t n, double prob, std::uint64_t seed,
                  std::optional<double> exp_scale) {
    if (n < 1) throw TooSmallError("random graph needs n >= 1");
    if (!(prob >= 0.0 && prob <= 1.0)) throw BadProbabilityError(prob);
    if (exp_scale && !(*exp_scale > 0.0)) throw BadScaleError(*exp_scale);

    std::mt19937_64 rng(seed);
    std::vector<EdgeInput> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (uniform01(rng) < prob) {
                double w = 1.0;
                if (exp_scale) w = -*exp_scale * std::log1p(-uniform01(rng));
                edges.push_back({i, j, w});
            }
        }
    }
    return build_graph(n, edges);
}

Graph barabasi_albert(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    if (m < 1 || m >= n)
        throw BadParamsError("preferential attachment needs 1 <= m < n, got m=" +
                             std::to_string(m) + ", n=" + std::to_string(n));

    std::mt19937_64 rng(seed);
    std::vector<double> degree(n, 0.0);
    std::vector<EdgeInput> edges;
    edges.reserve(static_cast<std::size_t>(n - m) * m);
    std::vector<std::uint32_t> chosen;

    for (std::uint32_t v = m; v < n; ++v) {
        chosen.clear();
        double total = 0.0;
        for (std::uint32_t t = 0; t < v; ++t) total += degree[t];
        // draw m distinct targets against the degree state before this
        // arrival; all-zero degrees (the very first arrival) fall back
        // to the uniform choice
        for (std::uint32_t e = 0; e < m; ++e) {
            std::uint32_t target;
            do {
                const double u = uniform01(rng);
                if (total <= 0.0) {
                    target = std::min(static_cast<std::uint32_t>(u * v), v - 1);
                } else {
                    double cum = 0.0;
                    target = v - 1;
                    const double mark = u * total;
                    for (std::uint32_t t = 0; t < v; ++t) {
                        cum += degree[t];
                        if (mark < cum) {
                            target = t;
                            break;
                        }
                    }
                }
            } while (std::find(chosen.begin(), chosen.end(), target) != chosen.end());
            chosen.push_back(target);
        }
        for (std::uint32_t t : chosen) {
            edges.push_back({t, v, 1.0});
            degree[t] += 1.0;
            degree[v] += 1.0;
        }
    }
    return build_graph(n, edges);
}

namespace {

std::uint64_t parse_uint(std::string_view tok, std::string_view what) {
    std::uint64_t value = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("bad " + std::string(what) + " '" + std::string(tok) +
                         "' in generator spec");
    return value;
}

double parse_real(std::string_view tok, std::string_view what) {
    double value = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("bad " + std::string(what) + " '" + std::string(tok) +
                         "' in generator spec");
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

bool GeneratorSpec::looks_like_spec(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) return false;
    const std::string_view tag = text.substr(0, colon);
    return tag == "cycle" || tag == "wheel" || tag == "roc" || tag == "er" || tag == "ba";
}

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("generator spec '" + std::string(text) + "' has no ':'");
    const std::string_view tag = text.substr(0, colon);
    const auto parts = split(text.substr(colon + 1), ',');

    auto expect_parts = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() < lo || parts.size() > hi)
            throw ParseError("wrong number of parameters in generator spec '" +
                             std::string(text) + "'");
    };
    auto keyed = [&](std::string_view part, GeneratorSpec& spec) {
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected key=value, got '" + std::string(part) +
                             "' in generator spec");
        const std::string_view key = part.substr(0, eq);
        const std::string_view val = part.substr(eq + 1);
        if (key == "seed")
            spec.seed = parse_uint(val, "seed");
        else if (key == "exp")
            spec.exp_scale = parse_real(val, "exponential scale");
        else
            throw ParseError("unknown key '" + std::string(key) + "' in generator spec");
    };

    GeneratorSpec spec;
    if (tag == "cycle" || tag == "wheel") {
        expect_parts(1, 1);
        spec.family = tag == "cycle" ? Family::cycle : Family::wheel;
        spec.n = static_cast<std::uint32_t>(parse_uint(parts[0], "vertex count"));
    } else if (tag == "roc") {
        expect_parts(2, 2);
        spec.family = Family::ring_of_cliques;
        spec.cliques = static_cast<std::uint32_t>(parse_uint(parts[0], "clique count"));
        spec.clique_size = static_cast<std::uint32_t>(parse_uint(parts[1], "clique size"));
    } else if (tag == "er") {
        expect_parts(2, 4);
        spec.family = Family::erdos_renyi;
        spec.n = static_cast<std::uint32_t>(parse_uint(parts[0], "vertex count"));
        spec.prob = parse_real(parts[1], "edge probability");
        for (std::size_t t = 2; t < parts.size(); ++t) keyed(parts[t], spec);
    } else if (tag == "ba") {
        expect_parts(2, 3);
        spec.family = Family::barabasi_albert;
        spec.n = static_cast<std::uint32_t>(parse_uint(parts[0], "vertex count"));
        spec.m = static_cast<std::uint32_t>(parse_uint(parts[1], "attachment count"));
        for (std::size_t t = 2; t < parts.size(); ++t) keyed(parts[t], spec);
        if (spec.exp_scale)
            throw ParseError("exp= weight distribution applies only to er specs");
    } else {
        throw ParseError("unknown generator family '" + std::string(tag) + "'");
    }
    return spec;
}

std::string GeneratorSpec::to_string() const {
    switch (family) {
        case Family::cycle:
            return "cycle:" + std::to_string(n);
        case Family::wheel:
            return "wheel:" + std::to_string(n);
        case Family::ring_of_cliques:
            return "roc:" + std::to_string(cliques) + "," + std::to_string(clique_size);
        case Family::erdos_renyi: {
            std::string s = "er:" + std::to_string(n) + "," + io::format_double(prob) +
                            ",seed=" + std::to_string(seed);
            if (exp_scale) s += ",exp=" + io::format_double(*exp_scale);
            return s;
        }
        case Family::barabasi_albert:
            return "ba:" + std::to_string(n) + "," + std::to_string(m) +
                   ",seed=" + std::to_string(seed);
    }
    throw BadParamsError("unreachable generator family");
}

Graph GeneratorSpec::build() const {
    switch (family) {
        case Family::cycle:
            return cycle(n);
        case Family::wheel:
            return wheel(n);
        case Family::ring_of_cliques:
            return ring_of_cliques(cliques, clique_size);
        case Family::erdos_renyi:
            return erdos_renyi(n, prob, seed, exp_scale);
        case Family::barabasi_albert:
            return barabasi_albert(n, m, seed);
    }
    throw BadParamsError("unreachable generator family");
}

}  // namespace eld::gen
