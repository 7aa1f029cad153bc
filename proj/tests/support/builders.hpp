#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pairsim/graph.hpp"
#include "pairsim/rng.hpp"

namespace testsupport {

// k source-only parents, each referencing both u and v. Ids: parents are
// 0..k-1, u = k, v = k+1.
struct StarPair {
    pairsim::Graph g;
    pairsim::NodeId u = 0;
    pairsim::NodeId v = 0;
};

inline StarPair star_pair_graph(pairsim::NodeId k) {
    std::vector<std::pair<pairsim::NodeId, pairsim::NodeId>> edges;
    for (pairsim::NodeId p = 0; p < k; ++p) {
        edges.emplace_back(p, k);
        edges.emplace_back(p, k + 1);
    }
    return {pairsim::Graph::from_edges(k + 2, std::move(edges)), k,
            static_cast<pairsim::NodeId>(k + 1)};
}

// One citation: b references a. Ids: a = 0, b = 1.
struct SingleEdge {
    pairsim::Graph g;
    pairsim::NodeId a = 0;
    pairsim::NodeId b = 1;
};

inline SingleEdge single_edge_graph() {
    return {pairsim::Graph::from_edges(2, {{1, 0}}), 0, 1};
}

// 0 -> 1 -> ... -> n-1. Every in/out neighborhood is a distinct singleton,
// so no two nodes share an in-neighbor.
inline pairsim::Graph path_graph(pairsim::NodeId n) {
    std::vector<std::pair<pairsim::NodeId, pairsim::NodeId>> edges;
    for (pairsim::NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return pairsim::Graph::from_edges(n, std::move(edges));
}

// Directed G(n, p) without self-loops, seeded.
inline pairsim::Graph random_digraph(pairsim::NodeId n, double p,
                                     std::uint64_t seed) {
    pairsim::SplitMix64 rng(pairsim::derive_stream(seed, n, 0x6772617068ull));
    std::vector<std::pair<pairsim::NodeId, pairsim::NodeId>> edges;
    for (pairsim::NodeId u = 0; u < n; ++u)
        for (pairsim::NodeId v = 0; v < n; ++v)
            if (u != v && rng.next_double() < p) edges.emplace_back(u, v);
    return pairsim::Graph::from_edges(n, std::move(edges));
}

// Two dense directed clusters with no cross edges; every node labeled by
// its cluster.
struct TwoCluster {
    pairsim::Graph g;
    pairsim::LabelMap labels;
};

inline TwoCluster two_cluster_graph(pairsim::NodeId cluster_size, double p,
                                    std::uint64_t seed) {
    pairsim::SplitMix64 rng(pairsim::derive_stream(seed, cluster_size, 0x636C7573ull));
    std::vector<std::pair<pairsim::NodeId, pairsim::NodeId>> edges;
    for (pairsim::NodeId base : {pairsim::NodeId(0), cluster_size}) {
        for (pairsim::NodeId u = 0; u < cluster_size; ++u)
            for (pairsim::NodeId v = 0; v < cluster_size; ++v)
                if (u != v && rng.next_double() < p)
                    edges.emplace_back(base + u, base + v);
    }
    TwoCluster result{
        pairsim::Graph::from_edges(cluster_size * 2, std::move(edges)), {}};
    for (pairsim::NodeId v = 0; v < cluster_size * 2; ++v)
        result.labels.set(v, v < cluster_size ? "left" : "right");
    return result;
}

}  // namespace testsupport
