#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pairsim/kernel.hpp"
#include "pairsim/montecarlo.hpp"

namespace pairsim {

struct RankedCandidate {
    NodeId node = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

struct QueryResult {
    NodeId query = 0;
    // Sorted by mean descending, ties broken by node id ascending; at most k
    // entries; never contains the query node itself.
    std::vector<RankedCandidate> ranked;
    std::size_t candidates_considered = 0;
};

// Top-k most similar nodes to `query` among the radius-pruned candidate set
// (the undirected ball minus the query). Zero-mean candidates are kept in
// the tail unless drop_zero_means is set.
QueryResult topk(const Graph& g, const Kernel& kernel, NodeId query,
                 std::uint32_t k, std::uint32_t radius, const McConfig& cfg,
                 bool drop_zero_means = false);

// One "name<TAB>mean<TAB>stderr" line per ranked candidate.
std::string format_topk(const Graph& g, const QueryResult& result,
                        int precision = 6);

}  // namespace pairsim
