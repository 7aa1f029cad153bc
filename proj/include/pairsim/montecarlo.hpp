#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pairsim/kernel.hpp"

namespace pairsim {

// Used whenever no seed is given, so published runs reproduce by default.
inline constexpr std::uint64_t kDefaultSeed = 42;

struct McConfig {
    std::uint32_t samples = 200;   // walks per estimate
    std::uint32_t max_steps = 15;  // walk truncation length
    double decay = 0.8;            // C, in (0,1)
    std::uint64_t seed = kDefaultSeed;

    void validate() const;  // throws SpecError
};

// One simulated coupled walk: the meeting time if the surfers met within the
// step budget, and the decayed score C^t (0 when they never met, including
// truncation at max_steps).
struct WalkOutcome {
    std::optional<std::uint32_t> meeting_length;
    double score = 0.0;

    bool met() const { return meeting_length.has_value(); }
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::uint32_t samples_used = 0;
};

// The RNG stream is derived from (cfg.seed, start, sample_index) alone, so
// any sample can be reproduced in isolation and in any order.
WalkOutcome sample_walk(const Kernel& kernel, NodePair start,
                        const McConfig& cfg, std::uint64_t sample_index);

// Mean and standard error over cfg.samples independent walks. Samples are
// combined in fixed blocks, so results do not depend on the worker count.
Estimate estimate(const Kernel& kernel, NodePair pair, const McConfig& cfg);

// "a<TAB>b<TAB>mean<TAB>stderr\n" with the graph's node names.
std::string format_estimate_line(const Graph& g, NodePair pair,
                                 const Estimate& est, int precision = 6);

}  // namespace pairsim
