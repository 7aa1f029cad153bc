#include "pairsim/eval.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "pairsim/errors.hpp"
#include "pairsim/io.hpp"
#include "pairsim/kernel.hpp"
#include "pairsim/query.hpp"
#include "pairsim/rng.hpp"

namespace pairsim {

namespace {

// Salt separating the query-sampling streams from the walk streams.
constexpr std::uint64_t kTrialSalt = 0x7472696C73ull;

std::vector<NodeId> sample_queries(const std::vector<NodeId>& eligible,
                                   std::uint32_t count, SplitMix64& rng) {
    std::vector<NodeId> pool = eligible;
    for (std::uint32_t i = 0; i < count; ++i) {
        std::size_t j = i + rng.next_below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

void EvalConfig::validate() const {
    if (top_k < 1) throw SpecError("top_k must be at least 1");
    if (num_queries < 1) throw SpecError("num_queries must be at least 1");
    if (num_trials < 1) throw SpecError("num_trials must be at least 1");
    if (radius < 1) throw SpecError("radius must be at least 1");
    mc.validate();
}

double average_precision(const std::vector<std::optional<LabelId>>& ranked_labels,
                         LabelId query_label) {
    std::size_t labeled_seen = 0;
    std::size_t relevant = 0;
    double precision_sum = 0.0;
    for (const auto& label : ranked_labels) {
        if (!label) continue;  // unlabeled answers are invisible to AP
        ++labeled_seen;
        if (*label == query_label) {
            ++relevant;
            precision_sum +=
                static_cast<double>(relevant) / static_cast<double>(labeled_seen);
        }
    }
    return relevant ? precision_sum / static_cast<double>(relevant) : 0.0;
}

EvalReport eval_map(const Graph& g, const LabelMap& labels,
                    const std::vector<MeasureSpec>& specs, const EvalConfig& cfg) {
    cfg.validate();
    if (labels.labeled_count() == 0) throw DataError("label map is empty");

    std::vector<NodeId> eligible;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!labels.label_of(v)) continue;
        if (g.in_neighbors(v).size() < cfg.min_in_degree) continue;
        if (g.out_neighbors(v).size() < cfg.min_out_degree) continue;
        eligible.push_back(v);
    }
    if (eligible.size() < cfg.num_queries)
        throw DataError("only " + std::to_string(eligible.size()) +
                        " nodes satisfy the query eligibility filters, need " +
                        std::to_string(cfg.num_queries));

    std::vector<std::unique_ptr<Kernel>> kernels;
    EvalReport report;
    for (const auto& spec : specs) {
        kernels.push_back(make_kernel(spec, g));
        MeasureEval me;
        me.measure = spec.to_string();
        report.measures.push_back(std::move(me));
    }

    report.trial_queries.resize(cfg.num_trials);
    for (std::uint32_t trial = 0; trial < cfg.num_trials; ++trial) {
        SplitMix64 trial_rng(derive_stream(cfg.seed, kTrialSalt, trial));
        std::vector<NodeId> queries =
            sample_queries(eligible, cfg.num_queries, trial_rng);
        report.trial_queries[trial] = queries;

        for (std::size_t mi = 0; mi < kernels.size(); ++mi) {
            const Kernel& kernel = *kernels[mi];
            std::vector<double> aps(queries.size(), 0.0);
            std::vector<std::size_t> skipped(queries.size(), 0);
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t qi = 0; qi < static_cast<std::int64_t>(queries.size());
                 ++qi) {
                NodeId q = queries[qi];
                QueryResult res =
                    topk(g, kernel, q, cfg.top_k, cfg.radius, cfg.mc);
                std::vector<std::optional<LabelId>> ranked_labels;
                ranked_labels.reserve(res.ranked.size());
                for (const auto& c : res.ranked) {
                    auto label = labels.label_of(c.node);
                    if (!label) ++skipped[qi];
                    ranked_labels.push_back(label);
                }
                aps[qi] = average_precision(ranked_labels, *labels.label_of(q));
            }
            MeasureEval& me = report.measures[mi];
            me.trial_maps.push_back(mean_of(aps));
            for (std::size_t c : skipped) me.unlabeled_skipped += c;
            me.query_aps.push_back(std::move(aps));
        }
    }

    for (auto& me : report.measures) me.mean_map = mean_of(me.trial_maps);
    return report;
}

void write_report(std::ostream& out, const EvalReport& report, int precision) {
    out << "# ap_convention\t" << report.ap_convention << '\n';
    for (const auto& me : report.measures)
        out << "# unlabeled_skipped\t" << me.measure << '\t' << me.unlabeled_skipped
            << '\n';
    out << "trial";
    for (const auto& me : report.measures) out << '\t' << me.measure;
    out << '\n';
    std::size_t trials = report.measures.empty() ? 0 : report.measures[0].trial_maps.size();
    for (std::size_t t = 0; t < trials; ++t) {
        out << t;
        for (const auto& me : report.measures)
            out << '\t' << format_value(me.trial_maps[t], precision);
        out << '\n';
    }
    out << "mean";
    for (const auto& me : report.measures)
        out << '\t' << format_value(me.mean_map, precision);
    out << '\n';
}

}  // namespace pairsim
