#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pairsim/graph.hpp"
#include "pairsim/measure.hpp"
#include "pairsim/rng.hpp"

namespace pairsim {

// Positions of the two surfers. Pair states are ordered; (x,x) is terminal
// for the walk, and the absorbing stopped state is represented as
// std::nullopt wherever a step result is concerned.
struct NodePair {
    NodeId a = 0;
    NodeId b = 0;
    friend bool operator==(NodePair, NodePair) = default;
};

inline std::uint64_t pair_key(NodePair s) {
    return (static_cast<std::uint64_t>(s.a) << 32) | s.b;
}

struct TransitionEntry {
    NodePair target;
    double probability = 0.0;
};

// Exact one-step distribution out of a pair state: the support set with its
// probabilities plus the mass falling into the absorbing stopped state.
// Entries are sorted by (a, b), targets unique, probabilities positive, and
// support_mass() + stopped_mass == 1 up to rounding.
struct TransitionDistribution {
    std::vector<TransitionEntry> entries;
    double stopped_mass = 0.0;

    double support_mass() const {
        double s = 0.0;
        for (const auto& e : entries) s += e.probability;
        return s;
    }
};

// A measure's transition rule bound to one graph. Immutable and reentrant;
// keeps a reference to the graph, which must outlive the kernel.
class Kernel {
public:
    virtual ~Kernel() = default;

    // Enumerates the full distribution out of `state`. The state must be
    // off-diagonal: terminal and stopped states have no transitions.
    virtual TransitionDistribution transition(NodePair state) const = 0;

    // Draws one step; nullopt means the walk stopped. Must be
    // distribution-identical to transition(); built-in kernels use
    // O(degree) sampling instead of enumerating the support set.
    virtual std::optional<NodePair> step(NodePair state, SplitMix64& rng) const;

    const Graph& graph() const { return *graph_; }

protected:
    explicit Kernel(const Graph& g) : graph_(&g) {}

    // Throws ContractError on diagonal states, BoundsError on bad ids.
    void check_state(NodePair state) const;

private:
    const Graph* graph_;
};

// Builds the transition kernel for `spec` over `g`, validating it first.
std::unique_ptr<Kernel> make_kernel(const MeasureSpec& spec, const Graph& g);

}  // namespace pairsim
