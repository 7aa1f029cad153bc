#pragma once

#include <cmath>
#include <map>

#include "pairsim/kernel.hpp"

namespace testsupport {

// Exhaustive truncated-walk sum: the total p(w) * C^l(w) over every compound
// walk w from `start` that meets within max_len steps. Walk prefixes that
// share a position are grouped level by level, which enumerates the same sum
// as listing the walks one by one. Independent of the fixed-point solver:
// mass flows forward from the start state instead of iterating the
// similarity equations backward from the identity.
inline double walk_enumeration_similarity(const pairsim::Kernel& kernel,
                                          pairsim::NodePair start, double decay,
                                          int max_len) {
    if (start.a == start.b) return 1.0;
    // Ordered map keeps the accumulation order fixed.
    std::map<std::uint64_t, double> alive{{pairsim::pair_key(start), 1.0}};
    double total = 0.0;
    for (int t = 1; t <= max_len && !alive.empty(); ++t) {
        std::map<std::uint64_t, double> next;
        double level_decay = std::pow(decay, static_cast<double>(t));
        for (const auto& [key, mass] : alive) {
            pairsim::NodePair state{static_cast<pairsim::NodeId>(key >> 32),
                                    static_cast<pairsim::NodeId>(key & 0xffffffffu)};
            pairsim::TransitionDistribution d = kernel.transition(state);
            for (const auto& e : d.entries) {
                if (e.target.a == e.target.b)
                    total += mass * e.probability * level_decay;
                else
                    next[pairsim::pair_key(e.target)] += mass * e.probability;
            }
        }
        alive = std::move(next);
    }
    return total;
}

}  // namespace testsupport
