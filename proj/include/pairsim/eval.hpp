#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pairsim/graph.hpp"
#include "pairsim/measure.hpp"
#include "pairsim/montecarlo.hpp"

namespace pairsim {

struct EvalConfig {
    std::uint32_t top_k = 100;
    std::uint32_t num_queries = 50;  // labeled query nodes per trial
    std::uint32_t num_trials = 50;
    std::uint32_t min_in_degree = 5;   // query eligibility filters
    std::uint32_t min_out_degree = 5;
    std::uint32_t radius = 4;
    McConfig mc;
    std::uint64_t seed = kDefaultSeed;  // drives query sampling only

    void validate() const;  // throws SpecError
};

// Average precision over a ranked answer list. Unlabeled entries are
// invisible: they are dropped before computing precision. Relevance means
// carrying query_label; the denominator is the number of relevant items in
// the remaining list. Returns 0 when nothing relevant survives.
double average_precision(const std::vector<std::optional<LabelId>>& ranked_labels,
                         LabelId query_label);

struct MeasureEval {
    std::string measure;  // canonical spec string
    double mean_map = 0.0;
    std::vector<double> trial_maps;
    std::vector<std::vector<double>> query_aps;  // [trial][query]
    std::size_t unlabeled_skipped = 0;           // answers dropped from AP
};

struct EvalReport {
    std::vector<MeasureEval> measures;               // requested order
    std::vector<std::vector<NodeId>> trial_queries;  // shared by all measures
    std::string ap_convention = "relevant-in-retrieved-labeled";
};

// Retrieval benchmark: per trial, sample num_queries eligible labeled nodes
// (at least min_in_degree citations and min_out_degree references), run a
// top-k query per measure per query node, score AP against the query's
// label, and average. Every measure sees identical query sets within a
// trial. Throws DataError when fewer than num_queries nodes are eligible.
EvalReport eval_map(const Graph& g, const LabelMap& labels,
                    const std::vector<MeasureSpec>& specs,
                    const EvalConfig& cfg);

// Tab-separated trial-by-measure MAP matrix with a trailing mean row,
// preceded by '#' metadata lines.
void write_report(std::ostream& out, const EvalReport& report,
                  int precision = 6);

}  // namespace pairsim
