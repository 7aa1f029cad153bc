#include "pairsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pairsim/errors.hpp"
#include "pairsim/io.hpp"

namespace pairsim {

void SolveConfig::validate() const {
    if (!(decay > 0.0 && decay < 1.0))
        throw SpecError("decay must lie strictly between 0 and 1");
    if (!(epsilon > 0.0)) throw SpecError("epsilon must be positive");
    if (max_iterations < 1) throw SpecError("max_iterations must be at least 1");
}

SimilarityTable::SimilarityTable(NodeId node_count)
    : n_(node_count),
      values_(static_cast<std::size_t>(node_count) * node_count, 0.0) {
    for (NodeId v = 0; v < n_; ++v)
        values_[static_cast<std::size_t>(v) * n_ + v] = 1.0;
}

double SimilarityTable::at(NodeId a, NodeId b) const {
    if (a >= n_ || b >= n_) throw BoundsError("table index out of range");
    return values_[static_cast<std::size_t>(a) * n_ + b];
}

void SimilarityTable::set(NodeId a, NodeId b, double value) {
    if (a >= n_ || b >= n_) throw BoundsError("table index out of range");
    values_[static_cast<std::size_t>(a) * n_ + b] = value;
}

namespace {

constexpr double kIterateSlack = 1e-12;

struct SweepResult {
    double delta = 0.0;
    bool within_bounds = true;   // every iterate in [0,1] up to slack
    bool nondecreasing = true;   // next >= prev up to slack
};

SweepResult sweep(const Graph& g, const Kernel& kernel, double decay,
                  const std::vector<double>& prev, std::vector<double>& next) {
    const std::int64_t n = g.node_count();
    double delta = 0.0;
    bool within = true;
    bool monotone = true;
#pragma omp parallel for schedule(dynamic, 4) \
    reduction(max : delta) reduction(&& : within) reduction(&& : monotone)
    for (std::int64_t a = 0; a < n; ++a) {
        const std::size_t row = static_cast<std::size_t>(a) * n;
        for (std::int64_t b = 0; b < n; ++b) {
            if (a == b) {
                next[row + b] = 1.0;
                continue;
            }
            TransitionDistribution d = kernel.transition(
                {static_cast<NodeId>(a), static_cast<NodeId>(b)});
            double sum = 0.0;
            for (const auto& e : d.entries)
                sum += e.probability *
                       prev[static_cast<std::size_t>(e.target.a) * n + e.target.b];
            double value = decay * sum;
            double old = prev[row + b];
            if (value < -kIterateSlack || value > 1.0 + kIterateSlack) within = false;
            if (value < old - kIterateSlack) monotone = false;
            next[row + b] = value;
            delta = std::max(delta, std::abs(value - old));
        }
    }
    return {delta, within, monotone};
}

struct RunResult {
    std::vector<double> values;
    int iterations = 0;
    double delta = 0.0;
};

RunResult run(const Graph& g, const Kernel& kernel, const SolveConfig& cfg,
              std::vector<double> current, bool enforce_monotone,
              const SweepObserver& observer) {
    cfg.validate();
    if (g.node_count() > cfg.memory_gate)
        throw CapacityError("dense solve refused: " +
                            std::to_string(g.node_count()) + " nodes exceed the " +
                            std::to_string(cfg.memory_gate) + "-node memory gate");

    for (NodeId v = 0; v < g.node_count(); ++v)
        current[static_cast<std::size_t>(v) * g.node_count() + v] = 1.0;
    std::vector<double> next(current.size());

    RunResult out;
    for (int k = 1; k <= cfg.max_iterations; ++k) {
        SweepResult r = sweep(g, kernel, cfg.decay, current, next);
        if (!r.within_bounds)
            throw ContractError("solver iterate escaped [0,1]; the kernel's "
                                "transition masses are inconsistent");
        if (enforce_monotone && !r.nondecreasing)
            throw ContractError("solver iterate decreased; the kernel's "
                                "transition masses are inconsistent");
        current.swap(next);
        out.iterations = k;
        out.delta = r.delta;
        if (observer) observer(k, current, out.delta);
        if (out.delta < cfg.epsilon) break;
    }
    out.values = std::move(current);
    return out;
}

}  // namespace

SimilarityTable solve(const Graph& g, const Kernel& kernel,
                      const SolveConfig& cfg, const SweepObserver& observer) {
    return solve_from(g, kernel, cfg, SimilarityTable(g.node_count()), observer);
}

SimilarityTable solve_from(const Graph& g, const Kernel& kernel,
                           const SolveConfig& cfg, SimilarityTable initial,
                           const SweepObserver& observer) {
    if (initial.node_count() != g.node_count())
        throw BoundsError("starting table does not match the graph");
    bool identity_start =
        initial.values() == SimilarityTable(initial.node_count()).values();
    RunResult r = run(g, kernel, cfg, std::move(initial.values_), identity_start,
                      observer);
    SimilarityTable out(g.node_count());
    out.values_ = std::move(r.values);
    out.iterations_run = r.iterations;
    out.final_delta = r.delta;
    return out;
}

double residual(const Graph& g, const Kernel& kernel,
                const SimilarityTable& table, double decay) {
    if (table.node_count() != g.node_count())
        throw BoundsError("table does not match the graph");
    const std::int64_t n = g.node_count();
    const std::vector<double>& values = table.values();
    double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 4) reduction(max : worst)
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            if (a == b) continue;
            TransitionDistribution d = kernel.transition(
                {static_cast<NodeId>(a), static_cast<NodeId>(b)});
            double sum = 0.0;
            for (const auto& e : d.entries)
                sum += e.probability *
                       values[static_cast<std::size_t>(e.target.a) * n + e.target.b];
            worst = std::max(worst, std::abs(values[static_cast<std::size_t>(a) * n + b] -
                                             decay * sum));
        }
    }
    return worst;
}

void write_table(std::ostream& out, const SimilarityTable& table, const Graph& g,
                 double threshold, int precision) {
    if (table.node_count() != g.node_count())
        throw BoundsError("table does not match the graph");
    for (NodeId a = 0; a < g.node_count(); ++a) {
        for (NodeId b = 0; b < g.node_count(); ++b) {
            if (a == b) continue;
            double v = table.at(a, b);
            if (v > threshold)
                out << g.node_name(a) << '\t' << g.node_name(b) << '\t'
                    << format_value(v, precision) << '\n';
        }
    }
}

SimilarityTable read_table(std::istream& in, const Graph& g) {
    SimilarityTable table(g.node_count());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string a, b, value;
        if (!(row >> a >> b >> value))
            throw ParseError("table line " + std::to_string(line_no) +
                             ": expected 'a b value'");
        auto na = g.find_node(a);
        auto nb = g.find_node(b);
        if (!na || !nb)
            throw ParseError("table line " + std::to_string(line_no) +
                             ": unknown node name");
        try {
            table.set(*na, *nb, std::stod(value));
        } catch (const std::exception&) {
            throw ParseError("table line " + std::to_string(line_no) +
                             ": bad value '" + value + "'");
        }
    }
    return table;
}

}  // namespace pairsim
