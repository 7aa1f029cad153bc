#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pairsim {

// Names a similarity measure by how the coupled surfer walk transitions.
// Besides the built-in measures, specs compose: a convex mixture of member
// specs, or an independent per-surfer product of two single-surfer rules
// (the product marginals are restricted to simrank/rvs).
struct MeasureSpec {
    enum class Kind {
        SimRank,
        RvsSimRank,
        PRank,
        PSimRank,
        SimRankStar,
        PSimRankStar,
        Convex,
        Product,
    };

    Kind kind = Kind::SimRank;
    double lambda = 0.5;               // PRank backward-step probability
    std::vector<MeasureSpec> members;  // Convex (>= 1) or Product (exactly 2)
    std::vector<double> weights;       // Convex only, parallel to members

    static MeasureSpec simrank() { return {Kind::SimRank, 0.0, {}, {}}; }
    static MeasureSpec rvs_simrank() { return {Kind::RvsSimRank, 0.0, {}, {}}; }
    static MeasureSpec prank(double lambda) { return {Kind::PRank, lambda, {}, {}}; }
    static MeasureSpec psimrank() { return {Kind::PSimRank, 0.0, {}, {}}; }
    static MeasureSpec simrank_star() { return {Kind::SimRankStar, 0.0, {}, {}}; }
    static MeasureSpec psimrank_star() { return {Kind::PSimRankStar, 0.0, {}, {}}; }
    static MeasureSpec convex(std::vector<std::pair<MeasureSpec, double>> terms);
    static MeasureSpec product(MeasureSpec first, MeasureSpec second);

    // Throws SpecError on violated invariants (lambda outside [0,1], convex
    // weights negative or not summing to 1, unsupported product marginals).
    void validate() const;

    // Canonical text form, parseable by parse_measure_spec.
    std::string to_string() const;
};

// Compact text forms: "simrank", "rvs", "prank:lambda=0.4", "psimrank",
// "simrankstar", "psimrankstar", "convex:[simrank@0.5,simrankstar@0.5]",
// "product:simrank,rvs". Throws SpecError on anything else.
MeasureSpec parse_measure_spec(std::string_view text);

}  // namespace pairsim
