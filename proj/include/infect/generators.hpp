#ifndef INFECT_GENERATORS_HPP
#define INFECT_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edge_list.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace infect {

// Graph families with closed-form dominant eigenvalues. Undirected families
// emit both directions of every edge.

/// K_{1,k}: centre 0, leaves 1..k. Spectral radius sqrt(k).
struct Star {
    std::size_t leaves;
};

/// K_{m,n}: nodes 0..m-1 on one side, m..m+n-1 on the other. Spectral radius sqrt(mn).
struct CompleteBipartite {
    std::size_t left;
    std::size_t right;
};

/// 0 -> 1 with weight `forward`, 1 -> 0 with weight `backward`. Eigenvalues +-sqrt(w1 w2).
struct WeightedTwoCycle {
    double forward;
    double backward;
};

/// Directed cycle 0 -> 1 -> ... -> p-1 -> 0 plus a tail p+t-1 -> ... -> p -> 0.
/// Every node has exactly one unit out-edge, so the matrix is column-stochastic.
struct SpiderTrapChain {
    std::size_t period;
    std::size_t tail;
};

/// Undirected path on n nodes. Spectral radius 2 cos(pi / (n + 1)).
struct Path {
    std::size_t nodes;
};

/// Each of the n*n entries (loops included) present with probability `density`,
/// weight uniform in [0, 1).
struct RandomNonneg {
    std::size_t nodes;
    double density = 1.0;
    std::uint64_t seed = 0;
};

using FamilyParams =
    std::variant<Star, CompleteBipartite, WeightedTwoCycle, SpiderTrapChain, Path, RandomNonneg>;

namespace detail {

inline void require(bool ok, const std::string &what) {
    if (!ok)
        throw Error(ErrorKind::InvalidParams, what);
}

inline void add_undirected(std::vector<Edge> &edges, NodeId a, NodeId b, double w = 1.0) {
    edges.push_back({a, b, w});
    edges.push_back({b, a, w});
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Builder {
    Graph operator()(const Star &p) const {
        require(p.leaves >= 1, "star needs at least one leaf");
        std::vector<Edge> edges;
        for (NodeId leaf = 1; leaf <= p.leaves; ++leaf)
            add_undirected(edges, 0, leaf);
        return Graph(p.leaves + 1, edges);
    }

    Graph operator()(const CompleteBipartite &p) const {
        require(p.left >= 1 && p.right >= 1, "complete-bipartite part sizes must be >= 1");
        std::vector<Edge> edges;
        for (NodeId a = 0; a < p.left; ++a)
            for (NodeId b = 0; b < p.right; ++b)
                add_undirected(edges, a, p.left + b);
        return Graph(p.left + p.right, edges);
    }

    Graph operator()(const WeightedTwoCycle &p) const {
        require(std::isfinite(p.forward) && std::isfinite(p.backward) && p.forward > 0.0 &&
                    p.backward > 0.0,
                "weighted-2-cycle weights must be positive");
        return build_graph(2, {{0, 1, p.forward}, {1, 0, p.backward}});
    }

    Graph operator()(const SpiderTrapChain &p) const {
        require(p.period >= 2, "spider-trap-chain period must be >= 2");
        require(p.tail >= 1, "spider-trap-chain tail must be >= 1");
        std::vector<Edge> edges;
        for (NodeId v = 0; v < p.period; ++v)
            edges.push_back({v, (v + 1) % p.period, 1.0});
        edges.push_back({p.period, 0, 1.0});
        for (NodeId k = 1; k < p.tail; ++k)
            edges.push_back({p.period + k, p.period + k - 1, 1.0});
        return Graph(p.period + p.tail, edges);
    }

    Graph operator()(const Path &p) const {
        require(p.nodes >= 1, "path needs at least one node");
        std::vector<Edge> edges;
        for (NodeId v = 0; v + 1 < p.nodes; ++v)
            add_undirected(edges, v, v + 1);
        return Graph(p.nodes, edges);
    }

    Graph operator()(const RandomNonneg &p) const {
        require(p.nodes >= 1, "random-nonneg needs at least one node");
        require(p.density > 0.0 && p.density <= 1.0, "random-nonneg density must be in (0, 1]");
        std::mt19937_64 rng(p.seed);
        std::vector<Edge> edges;
        for (NodeId dst = 0; dst < p.nodes; ++dst)
            for (NodeId src = 0; src < p.nodes; ++src) {
                const double keep = unit_uniform(rng);
                const double w = unit_uniform(rng);
                if (keep < p.density)
                    edges.push_back({src, dst, w});
            }
        return Graph(p.nodes, edges);
    }
};

} // namespace detail

inline Graph generate(const FamilyParams &params) { return std::visit(detail::Builder{}, params); }

enum class DanglingPolicy { Error, SelfLoop };

/**
 * Rescale every column to sum to one, giving a column-stochastic transition
 * matrix (A[i][j] = probability of moving j -> i). Nodes without out-weight
 * either raise DanglingNode or receive a unit self-loop.
 */
inline Graph markov_normalize(const Graph &g, DanglingPolicy policy = DanglingPolicy::Error) {
    const std::vector<double> sums = g.out_weights();
    std::vector<Edge> edges = g.edges();
    for (NodeId j = 0; j < g.size(); ++j) {
        if (sums[j] > 0.0)
            continue;
        if (policy == DanglingPolicy::Error)
            throw Error(ErrorKind::DanglingNode, "node " + std::to_string(j) + " has no out-weight");
        edges.push_back({j, j, 1.0});
    }
    for (Edge &e : edges)
        if (sums[e.src] > 0.0)
            e.weight /= sums[e.src];
    return Graph(g.size(), edges);
}

// "family:a,b" spellings used on the command line and in report provenance.

namespace detail {

inline std::vector<std::string_view> split_args(std::string_view s) {
    std::vector<std::string_view> out;
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(s.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

inline std::size_t count_arg(std::string_view token, std::string_view family) {
    std::size_t v = 0;
    require(parse_number(token, v), "bad integer '" + std::string(token) + "' for " + std::string(family));
    return v;
}

inline double real_arg(std::string_view token, std::string_view family) {
    double v = 0.0;
    require(parse_number(token, v), "bad number '" + std::string(token) + "' for " + std::string(family));
    return v;
}

} // namespace detail

inline FamilyParams parse_family(std::string_view spelling, std::uint64_t seed = 0) {
    const auto colon = spelling.find(':');
    const std::string_view name = spelling.substr(0, colon);
    const auto args =
        detail::split_args(colon == std::string_view::npos ? std::string_view{} : spelling.substr(colon + 1));
    auto arity = [&](std::size_t lo, std::size_t hi) {
        detail::require(args.size() >= lo && args.size() <= hi,
                        "wrong number of arguments for " + std::string(name));
    };

    if (name == "star") {
        arity(1, 1);
        return Star{detail::count_arg(args[0], name)};
    }
    if (name == "complete-bipartite") {
        arity(2, 2);
        return CompleteBipartite{detail::count_arg(args[0], name), detail::count_arg(args[1], name)};
    }
    if (name == "weighted-2-cycle") {
        arity(2, 2);
        return WeightedTwoCycle{detail::real_arg(args[0], name), detail::real_arg(args[1], name)};
    }
    if (name == "spider-trap-chain") {
        arity(2, 2);
        return SpiderTrapChain{detail::count_arg(args[0], name), detail::count_arg(args[1], name)};
    }
    if (name == "path") {
        arity(1, 1);
        return Path{detail::count_arg(args[0], name)};
    }
    if (name == "random-nonneg") {
        arity(1, 2);
        RandomNonneg p{detail::count_arg(args[0], name), 1.0, seed};
        if (args.size() == 2)
            p.density = detail::real_arg(args[1], name);
        return p;
    }
    throw Error(ErrorKind::InvalidParams, "unknown graph family '" + std::string(name) + "'");
}

inline std::string to_string(const FamilyParams &params) {
    struct Printer {
        std::string operator()(const Star &p) const { return "star:" + std::to_string(p.leaves); }
        std::string operator()(const CompleteBipartite &p) const {
            return "complete-bipartite:" + std::to_string(p.left) + "," + std::to_string(p.right);
        }
        std::string operator()(const WeightedTwoCycle &p) const {
            return "weighted-2-cycle:" + format_weight(p.forward) + "," + format_weight(p.backward);
        }
        std::string operator()(const SpiderTrapChain &p) const {
            return "spider-trap-chain:" + std::to_string(p.period) + "," + std::to_string(p.tail);
        }
        std::string operator()(const Path &p) const { return "path:" + std::to_string(p.nodes); }
        std::string operator()(const RandomNonneg &p) const {
            return "random-nonneg:" + std::to_string(p.nodes) + "," + format_weight(p.density);
        }
    };
    return std::visit(Printer{}, params);
}

} // namespace infect

#endif
