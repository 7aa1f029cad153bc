#include "pairsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/io.hpp"

namespace pairsim {

void McConfig::validate() const {
    if (samples < 1) throw SpecError("samples must be at least 1");
    if (max_steps < 1) throw SpecError("max_steps must be at least 1");
    if (!(decay > 0.0 && decay < 1.0))
        throw SpecError("decay must lie strictly between 0 and 1");
}

WalkOutcome sample_walk(const Kernel& kernel, NodePair start, const McConfig& cfg,
                        std::uint64_t sample_index) {
    cfg.validate();
    if (start.a >= kernel.graph().node_count() ||
        start.b >= kernel.graph().node_count())
        throw BoundsError("walk start references a node outside the graph");
    if (start.a == start.b) return {0u, 1.0};

    SplitMix64 rng(derive_stream(cfg.seed, pair_key(start), sample_index));
    NodePair state = start;
    for (std::uint32_t t = 1; t <= cfg.max_steps; ++t) {
        std::optional<NodePair> next = kernel.step(state, rng);
        if (!next) return {std::nullopt, 0.0};
        if (next->a == next->b)
            return {t, std::pow(cfg.decay, static_cast<double>(t))};
        state = *next;
    }
    return {std::nullopt, 0.0};  // truncated without meeting scores zero
}

Estimate estimate(const Kernel& kernel, NodePair pair, const McConfig& cfg) {
    cfg.validate();
    const std::uint64_t n = cfg.samples;
    // Fixed block size: partial sums combine in block order, so the result
    // is identical for any worker count.
    constexpr std::uint64_t kBlock = 1024;
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> block_sum(blocks, 0.0);
    std::vector<double> block_sumsq(blocks, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
        double s = 0.0, q = 0.0;
        const std::uint64_t hi = std::min(n, (blk + 1) * kBlock);
        for (std::uint64_t i = blk * kBlock; i < hi; ++i) {
            double x = sample_walk(kernel, pair, cfg, i).score;
            s += x;
            q += x * x;
        }
        block_sum[blk] = s;
        block_sumsq[blk] = q;
    }

    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        sum += block_sum[blk];
        sumsq += block_sumsq[blk];
    }
    double mean = sum / static_cast<double>(n);
    double std_error = 0.0;
    if (n > 1) {
        double variance =
            (sumsq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
        std_error = std::sqrt(std::max(0.0, variance) / static_cast<double>(n));
    }
    return {mean, std_error, cfg.samples};
}

std::string format_estimate_line(const Graph& g, NodePair pair,
                                 const Estimate& est, int precision) {
    return g.node_name(pair.a) + "\t" + g.node_name(pair.b) + "\t" +
           format_value(est.mean, precision) + "\t" +
           format_value(est.std_error, precision) + "\n";
}

}  // namespace pairsim
