#include "pairsim/query.hpp"

#include <algorithm>

#include "pairsim/io.hpp"

namespace pairsim {

QueryResult topk(const Graph& g, const Kernel& kernel, NodeId query,
                 std::uint32_t k, std::uint32_t radius, const McConfig& cfg,
                 bool drop_zero_means) {
    std::vector<NodeId> candidates = g.ball(query, radius);
    std::erase(candidates, query);

    QueryResult result;
    result.query = query;
    result.candidates_considered = candidates.size();

    std::vector<RankedCandidate> scored(candidates.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(candidates.size()); ++i) {
        Estimate est = estimate(kernel, {query, candidates[i]}, cfg);
        scored[i] = {candidates[i], est.mean, est.std_error};
    }

    if (drop_zero_means)
        std::erase_if(scored, [](const RankedCandidate& c) { return c.mean == 0.0; });

    std::sort(scored.begin(), scored.end(),
              [](const RankedCandidate& l, const RankedCandidate& r) {
                  if (l.mean != r.mean) return l.mean > r.mean;
                  return l.node < r.node;
              });
    if (scored.size() > k) scored.resize(k);
    result.ranked = std::move(scored);
    return result;
}

std::string format_topk(const Graph& g, const QueryResult& result, int precision) {
    std::string out;
    for (const auto& c : result.ranked) {
        out += g.node_name(c.node);
        out += '\t';
        out += format_value(c.mean, precision);
        out += '\t';
        out += format_value(c.std_error, precision);
        out += '\n';
    }
    return out;
}

}  // namespace pairsim
