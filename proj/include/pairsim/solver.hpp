#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "pairsim/graph.hpp"
#include "pairsim/kernel.hpp"

namespace pairsim {

struct SolveConfig {
    double decay = 0.8;     // C, in (0,1)
    double epsilon = 1e-9;  // max-norm convergence threshold
    int max_iterations = 100;
    NodeId memory_gate = 20000;  // refuse the dense solve above this size

    void validate() const;  // throws SpecError
};

// Called after every sweep with the 1-based iteration number, the row-major
// iterate, and the sweep's max-norm delta.
using SweepObserver =
    std::function<void(int, const std::vector<double>&, double)>;

// Dense similarity values over all ordered node pairs, diagonal pinned to 1.
// Freshly constructed tables are the identity (the iteration's s_0).
class SimilarityTable {
public:
    SimilarityTable() = default;
    explicit SimilarityTable(NodeId node_count);

    NodeId node_count() const { return n_; }
    double at(NodeId a, NodeId b) const;
    void set(NodeId a, NodeId b, double value);
    // Row-major n x n.
    const std::vector<double>& values() const { return values_; }

    int iterations_run = 0;
    double final_delta = 0.0;

private:
    NodeId n_ = 0;
    std::vector<double> values_;

    friend SimilarityTable solve_from(const Graph&, const Kernel&,
                                      const SolveConfig&, SimilarityTable,
                                      const SweepObserver&);
};

// Fixed-point iteration from the identity table: each sweep replaces every
// off-diagonal entry with decay times the transition-weighted sum of the
// previous iterate, until the max-norm delta drops below epsilon or the
// iteration cap is hit. Iterates are checked to be nondecreasing and within
// [0,1] (up to 1e-12); a violation raises ContractError.
SimilarityTable solve(const Graph& g, const Kernel& kernel,
                      const SolveConfig& cfg, const SweepObserver& observer = {});

// Same sweep from a caller-supplied starting table (diagonal re-pinned).
// No monotonicity check: it only holds from the identity start.
SimilarityTable solve_from(const Graph& g, const Kernel& kernel,
                           const SolveConfig& cfg, SimilarityTable initial,
                           const SweepObserver& observer = {});

// Max-norm defect of `table` against the recursive equations at `decay`:
// max over off-diagonal pairs of |s(a,b) - C * sum p * s(a',b')|.
double residual(const Graph& g, const Kernel& kernel,
                const SimilarityTable& table, double decay);

// Off-diagonal entries strictly above `threshold`, one
// "a<TAB>b<TAB>value" line per ordered pair in row-major order, node names
// as loaded. precision < 0 prints full precision.
void write_table(std::ostream& out, const SimilarityTable& table,
                 const Graph& g, double threshold = 0.0, int precision = 6);

// Inverse of write_table: unknown names or malformed lines raise ParseError;
// unmentioned off-diagonal entries stay 0.
SimilarityTable read_table(std::istream& in, const Graph& g);

}  // namespace pairsim
