#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "eld/graph.hpp"

namespace eld::gen {

/// n-cycle: edges i -- (i+1 mod n), unit weights. n >= 3.
Graph cycle(std::uint32_t n);

/// Wheel on n vertices total: hub 0 joined to rim 1..n-1, rim forms a
/// cycle. 2(n-1) edges, unit weights. n >= 4.
Graph wheel(std::uint32_t n);

/// c cliques of s vertices each (clique q occupies q*s..q*s+s-1), joined
/// in a ring by bridge edges between first vertices of consecutive
/// cliques. c >= 2, s >= 2. For c = 2 the second bridge runs between the
/// second vertices so the two bridges stay distinct.
Graph ring_of_cliques(std::uint32_t c, std::uint32_t s);

/// G(n, prob): every unordered pair included independently with
/// probability prob; weights are 1 or exponential(scale) draws when
/// exp_scale is set (scale = mean). Fixed seed gives the identical graph
/// on every platform.
Graph erdos_renyi(std::uint32_t n, double prob, std::uint64_t seed,
                  std::optional<double> exp_scale = std::nullopt);

/// Preferential attachment: m isolated seed vertices, then each arrival
/// attaches m edges to distinct existing vertices chosen proportionally
/// to current degree (uniformly while all degrees are zero). Unit
/// weights, (n-m)*m edges. 1 <= m < n.
Graph barabasi_albert(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

/// Parsed form of the CLI generator grammar:
///   cycle:50 | wheel:100 | roc:6,3 | er:100,0.8,seed=7[,exp=20] | ba:500,3,seed=1
/// to_string() emits the canonical spelling; parse(to_string()) round-trips.
struct GeneratorSpec {
    enum class Family { cycle, wheel, ring_of_cliques, erdos_renyi, barabasi_albert };

    Family family = Family::cycle;
    std::uint32_t n = 0;            // cycle / wheel / er / ba
    std::uint32_t cliques = 0;      // roc
    std::uint32_t clique_size = 0;  // roc
    std::uint32_t m = 0;            // ba
    double prob = 0.0;              // er
    std::uint64_t seed = 0;         // er / ba
    std::optional<double> exp_scale;  // er weight distribution

    static GeneratorSpec parse(std::string_view text);
    /// True when `text` starts with a known family tag; used to tell
    /// generator strings from file paths.
    static bool looks_like_spec(std::string_view text);

    std::string to_string() const;
    Graph build() const;
};

}  // namespace eld::gen
