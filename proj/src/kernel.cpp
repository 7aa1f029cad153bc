#include "pairsim/kernel.hpp"

#include <algorithm>
#include <span>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

using Neighbors = std::span<const NodeId>;

struct SetStats {
    std::size_t intersection = 0;
    std::size_t union_size = 0;
};

SetStats set_stats(Neighbors x, Neighbors y) {
    SetStats s;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] < y[j]) ++i;
        else if (y[j] < x[i]) ++j;
        else { ++s.intersection; ++i; ++j; }
    }
    s.union_size = x.size() + y.size() - s.intersection;
    return s;
}

// k-th element (0-based) of the sorted intersection of x and y.
NodeId kth_in_intersection(Neighbors x, Neighbors y, std::size_t k) {
    std::size_t i = 0, j = 0;
    while (true) {
        if (x[i] < y[j]) ++i;
        else if (y[j] < x[i]) ++j;
        else {
            if (k == 0) return x[i];
            --k; ++i; ++j;
        }
    }
}

// k-th element (0-based) of the sorted difference x \ y.
NodeId kth_in_difference(Neighbors x, Neighbors y, std::size_t k) {
    std::size_t i = 0, j = 0;
    while (true) {
        while (j < y.size() && i < x.size() && y[j] < x[i]) ++j;
        if (j < y.size() && i < x.size() && x[i] == y[j]) { ++i; ++j; continue; }
        if (k == 0) return x[i];
        --k; ++i;
    }
}

void append_cross(std::vector<TransitionEntry>& out, Neighbors xs, Neighbors ys,
                  double per_entry) {
    for (NodeId x : xs)
        for (NodeId y : ys) out.push_back({{x, y}, per_entry});
}

// Sorts by target and merges duplicates (a target can be produced by more
// than one support subset, e.g. when a node is its own in-neighbor).
TransitionDistribution finalize(std::vector<TransitionEntry> entries,
                                double stopped_mass) {
    std::sort(entries.begin(), entries.end(),
              [](const TransitionEntry& l, const TransitionEntry& r) {
                  return pair_key(l.target) < pair_key(r.target);
              });
    std::size_t w = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (w > 0 && entries[w - 1].target == entries[i].target)
            entries[w - 1].probability += entries[i].probability;
        else
            entries[w++] = entries[i];
    }
    entries.resize(w);
    return {std::move(entries), stopped_mass};
}

class SimRankKernel final : public Kernel {
public:
    explicit SimRankKernel(const Graph& g) : Kernel(g) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        if (ia.empty() || ib.empty()) return {{}, 1.0};
        std::vector<TransitionEntry> entries;
        entries.reserve(ia.size() * ib.size());
        double p = 1.0 / (static_cast<double>(ia.size()) * static_cast<double>(ib.size()));
        append_cross(entries, ia, ib, p);
        return finalize(std::move(entries), 0.0);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        if (ia.empty() || ib.empty()) return std::nullopt;
        return NodePair{ia[rng.next_below(ia.size())], ib[rng.next_below(ib.size())]};
    }
};

class RvsSimRankKernel final : public Kernel {
public:
    explicit RvsSimRankKernel(const Graph& g) : Kernel(g) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        Neighbors oa = graph().out_neighbors(s.a);
        Neighbors ob = graph().out_neighbors(s.b);
        if (oa.empty() || ob.empty()) return {{}, 1.0};
        std::vector<TransitionEntry> entries;
        entries.reserve(oa.size() * ob.size());
        double p = 1.0 / (static_cast<double>(oa.size()) * static_cast<double>(ob.size()));
        append_cross(entries, oa, ob, p);
        return finalize(std::move(entries), 0.0);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        Neighbors oa = graph().out_neighbors(s.a);
        Neighbors ob = graph().out_neighbors(s.b);
        if (oa.empty() || ob.empty()) return std::nullopt;
        return NodePair{oa[rng.next_below(oa.size())], ob[rng.next_below(ob.size())]};
    }
};

// Coin with probability lambda: both surfers step backward, otherwise both
// step forward. A dead end on the chosen side stops the walk; that mass is
// not renormalized onto the surviving side.
class PRankKernel final : public Kernel {
public:
    PRankKernel(const Graph& g, double lambda) : Kernel(g), lambda_(lambda) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        std::vector<TransitionEntry> entries;
        double stopped = 0.0;
        if (lambda_ > 0.0) {
            Neighbors ia = graph().in_neighbors(s.a);
            Neighbors ib = graph().in_neighbors(s.b);
            if (ia.empty() || ib.empty())
                stopped += lambda_;
            else
                append_cross(entries, ia, ib,
                             lambda_ / (static_cast<double>(ia.size()) *
                                        static_cast<double>(ib.size())));
        }
        if (lambda_ < 1.0) {
            double forward = 1.0 - lambda_;
            Neighbors oa = graph().out_neighbors(s.a);
            Neighbors ob = graph().out_neighbors(s.b);
            if (oa.empty() || ob.empty())
                stopped += forward;
            else
                append_cross(entries, oa, ob,
                             forward / (static_cast<double>(oa.size()) *
                                        static_cast<double>(ob.size())));
        }
        return finalize(std::move(entries), stopped);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        bool backward = rng.next_double() < lambda_;
        Neighbors xs = backward ? graph().in_neighbors(s.a) : graph().out_neighbors(s.a);
        Neighbors ys = backward ? graph().in_neighbors(s.b) : graph().out_neighbors(s.b);
        if (xs.empty() || ys.empty()) return std::nullopt;
        return NodePair{xs[rng.next_below(xs.size())], ys[rng.next_below(ys.size())]};
    }

private:
    double lambda_;
};

// Jaccard mass jumps both surfers onto a common in-neighbor; the exclusive
// remainders pair one side's exclusive in-neighbors against the other side's
// full in-neighbor set. Subset masses whose cross set is empty stop the walk.
class PSimRankKernel final : public Kernel {
public:
    explicit PSimRankKernel(const Graph& g) : Kernel(g) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        if (ia.empty() && ib.empty()) return {{}, 1.0};
        SetStats st = set_stats(ia, ib);
        double uni = static_cast<double>(st.union_size);

        std::vector<TransitionEntry> entries;
        double stopped = 0.0;
        for (std::size_t k = 0; k < st.intersection; ++k) {
            NodeId x = kth_in_intersection(ia, ib, k);
            entries.push_back({{x, x}, 1.0 / uni});
        }
        std::size_t a_only = ia.size() - st.intersection;
        if (a_only > 0) {
            if (ib.empty())
                stopped += static_cast<double>(a_only) / uni;
            else {
                double per = 1.0 / (uni * static_cast<double>(ib.size()));
                for (std::size_t k = 0; k < a_only; ++k) {
                    NodeId x = kth_in_difference(ia, ib, k);
                    for (NodeId y : ib) entries.push_back({{x, y}, per});
                }
            }
        }
        std::size_t b_only = ib.size() - st.intersection;
        if (b_only > 0) {
            if (ia.empty())
                stopped += static_cast<double>(b_only) / uni;
            else {
                double per = 1.0 / (uni * static_cast<double>(ia.size()));
                for (std::size_t k = 0; k < b_only; ++k) {
                    NodeId y = kth_in_difference(ib, ia, k);
                    for (NodeId x : ia) entries.push_back({{x, y}, per});
                }
            }
        }
        return finalize(std::move(entries), stopped);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        if (ia.empty() && ib.empty()) return std::nullopt;
        SetStats st = set_stats(ia, ib);
        // The three subset masses share the denominator |union|, so one
        // integer draw picks the subset and, for the diagonal, the member.
        std::uint64_t r = rng.next_below(st.union_size);
        if (r < st.intersection) {
            NodeId x = kth_in_intersection(ia, ib, r);
            return NodePair{x, x};
        }
        if (r < ia.size()) {
            if (ib.empty()) return std::nullopt;
            NodeId x = kth_in_difference(ia, ib, r - st.intersection);
            return NodePair{x, ib[rng.next_below(ib.size())]};
        }
        if (ia.empty()) return std::nullopt;
        NodeId y = kth_in_difference(ib, ia, r - ia.size());
        return NodePair{ia[rng.next_below(ia.size())], y};
    }
};

// Fair coin: exactly one surfer steps to a uniform in-neighbor. A dead end
// on the chosen side stops the walk.
class SimRankStarKernel final : public Kernel {
public:
    explicit SimRankStarKernel(const Graph& g) : Kernel(g) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        std::vector<TransitionEntry> entries;
        double stopped = 0.0;
        if (ib.empty())
            stopped += 0.5;
        else {
            double per = 0.5 / static_cast<double>(ib.size());
            for (NodeId y : ib) entries.push_back({{s.a, y}, per});
        }
        if (ia.empty())
            stopped += 0.5;
        else {
            double per = 0.5 / static_cast<double>(ia.size());
            for (NodeId x : ia) entries.push_back({{x, s.b}, per});
        }
        return finalize(std::move(entries), stopped);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        if (rng.next_below(2) == 0) {
            Neighbors ib = graph().in_neighbors(s.b);
            if (ib.empty()) return std::nullopt;
            return NodePair{s.a, ib[rng.next_below(ib.size())]};
        }
        Neighbors ia = graph().in_neighbors(s.a);
        if (ia.empty()) return std::nullopt;
        return NodePair{ia[rng.next_below(ia.size())], s.b};
    }
};

// Jaccard mass jumps both surfers onto a common in-neighbor; the remainder
// splits evenly between the two single-surfer backward moves.
class PSimRankStarKernel final : public Kernel {
public:
    explicit PSimRankStarKernel(const Graph& g) : Kernel(g) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        if (ia.empty() && ib.empty()) return {{}, 1.0};
        SetStats st = set_stats(ia, ib);
        double uni = static_cast<double>(st.union_size);
        double jaccard = static_cast<double>(st.intersection) / uni;

        std::vector<TransitionEntry> entries;
        double stopped = 0.0;
        for (std::size_t k = 0; k < st.intersection; ++k) {
            NodeId x = kth_in_intersection(ia, ib, k);
            entries.push_back({{x, x}, 1.0 / uni});
        }
        double half = (1.0 - jaccard) / 2.0;
        if (half > 0.0) {
            if (ib.empty())
                stopped += half;
            else {
                double per = half / static_cast<double>(ib.size());
                for (NodeId y : ib) entries.push_back({{s.a, y}, per});
            }
            if (ia.empty())
                stopped += half;
            else {
                double per = half / static_cast<double>(ia.size());
                for (NodeId x : ia) entries.push_back({{x, s.b}, per});
            }
        }
        return finalize(std::move(entries), stopped);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        Neighbors ia = graph().in_neighbors(s.a);
        Neighbors ib = graph().in_neighbors(s.b);
        if (ia.empty() && ib.empty()) return std::nullopt;
        SetStats st = set_stats(ia, ib);
        double jaccard =
            static_cast<double>(st.intersection) / static_cast<double>(st.union_size);
        double u = rng.next_double();
        if (u < jaccard) {
            NodeId x = kth_in_intersection(ia, ib, rng.next_below(st.intersection));
            return NodePair{x, x};
        }
        if (u < jaccard + (1.0 - jaccard) / 2.0) {
            if (ib.empty()) return std::nullopt;
            return NodePair{s.a, ib[rng.next_below(ib.size())]};
        }
        if (ia.empty()) return std::nullopt;
        return NodePair{ia[rng.next_below(ia.size())], s.b};
    }
};

class ConvexKernel final : public Kernel {
public:
    ConvexKernel(const Graph& g, std::vector<std::unique_ptr<Kernel>> members,
                 std::vector<double> weights)
        : Kernel(g), members_(std::move(members)), weights_(std::move(weights)) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        std::vector<TransitionEntry> entries;
        double stopped = 0.0;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (weights_[i] == 0.0) continue;
            TransitionDistribution d = members_[i]->transition(s);
            stopped += weights_[i] * d.stopped_mass;
            for (const auto& e : d.entries)
                entries.push_back({e.target, weights_[i] * e.probability});
        }
        return finalize(std::move(entries), stopped);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        double u = rng.next_double();
        double acc = 0.0;
        const Kernel* chosen = nullptr;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (weights_[i] == 0.0) continue;
            chosen = members_[i].get();
            acc += weights_[i];
            if (u < acc) break;
        }
        return chosen->step(s, rng);
    }

private:
    std::vector<std::unique_ptr<Kernel>> members_;
    std::vector<double> weights_;
};

// Independent per-surfer transitions: the joint probability factors into
// two single-surfer marginals (uniform backward for simrank, uniform
// forward for rvs). Either surfer hitting a dead end stops the pair walk.
class ProductKernel final : public Kernel {
public:
    ProductKernel(const Graph& g, bool first_backward, bool second_backward)
        : Kernel(g), first_backward_(first_backward),
          second_backward_(second_backward) {}

    TransitionDistribution transition(NodePair s) const override {
        check_state(s);
        Neighbors xs = first_backward_ ? graph().in_neighbors(s.a)
                                       : graph().out_neighbors(s.a);
        Neighbors ys = second_backward_ ? graph().in_neighbors(s.b)
                                        : graph().out_neighbors(s.b);
        if (xs.empty() || ys.empty()) return {{}, 1.0};
        std::vector<TransitionEntry> entries;
        entries.reserve(xs.size() * ys.size());
        double p = 1.0 / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
        append_cross(entries, xs, ys, p);
        return finalize(std::move(entries), 0.0);
    }

    std::optional<NodePair> step(NodePair s, SplitMix64& rng) const override {
        check_state(s);
        Neighbors xs = first_backward_ ? graph().in_neighbors(s.a)
                                       : graph().out_neighbors(s.a);
        Neighbors ys = second_backward_ ? graph().in_neighbors(s.b)
                                        : graph().out_neighbors(s.b);
        if (xs.empty() || ys.empty()) return std::nullopt;
        return NodePair{xs[rng.next_below(xs.size())], ys[rng.next_below(ys.size())]};
    }

private:
    bool first_backward_;
    bool second_backward_;
};

std::unique_ptr<Kernel> build(const MeasureSpec& spec, const Graph& g) {
    using Kind = MeasureSpec::Kind;
    switch (spec.kind) {
        case Kind::SimRank: return std::make_unique<SimRankKernel>(g);
        case Kind::RvsSimRank: return std::make_unique<RvsSimRankKernel>(g);
        case Kind::PRank: return std::make_unique<PRankKernel>(g, spec.lambda);
        case Kind::PSimRank: return std::make_unique<PSimRankKernel>(g);
        case Kind::SimRankStar: return std::make_unique<SimRankStarKernel>(g);
        case Kind::PSimRankStar: return std::make_unique<PSimRankStarKernel>(g);
        case Kind::Convex: {
            std::vector<std::unique_ptr<Kernel>> members;
            members.reserve(spec.members.size());
            for (const auto& m : spec.members) members.push_back(build(m, g));
            return std::make_unique<ConvexKernel>(g, std::move(members),
                                                  spec.weights);
        }
        case Kind::Product:
            return std::make_unique<ProductKernel>(
                g, spec.members[0].kind == Kind::SimRank,
                spec.members[1].kind == Kind::SimRank);
    }
    throw SpecError("corrupt measure spec");
}

}  // namespace

void Kernel::check_state(NodePair state) const {
    if (state.a >= graph().node_count() || state.b >= graph().node_count())
        throw BoundsError("pair state references a node outside the graph");
    if (state.a == state.b)
        throw ContractError("transition queried on a terminal (x,x) state");
}

std::optional<NodePair> Kernel::step(NodePair state, SplitMix64& rng) const {
    TransitionDistribution d = transition(state);
    double u = rng.next_double();
    double acc = 0.0;
    for (const auto& e : d.entries) {
        acc += e.probability;
        if (u < acc) return e.target;
    }
    return std::nullopt;
}

std::unique_ptr<Kernel> make_kernel(const MeasureSpec& spec, const Graph& g) {
    spec.validate();
    return build(spec, g);
}

}  // namespace pairsim
