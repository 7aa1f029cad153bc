// Release gate for the similarity engine: every check prints one PASS/FAIL
// line and the process exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pairsim/eval.hpp"
#include "pairsim/kernel.hpp"
#include "pairsim/montecarlo.hpp"
#include "pairsim/solver.hpp"
#include "support/builders.hpp"
#include "support/walk_oracle.hpp"

using namespace pairsim;

namespace {

const double kDecay = 0.8;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<MeasureSpec> six_measures() {
    return {MeasureSpec::simrank(),      MeasureSpec::rvs_simrank(),
            MeasureSpec::prank(0.5),     MeasureSpec::psimrank(),
            MeasureSpec::simrank_star(), MeasureSpec::psimrank_star()};
}

SolveConfig solve_cfg(double epsilon, int max_iterations = 200) {
    return {kDecay, epsilon, max_iterations, 20000};
}

// ---- shared fixtures for criteria 5 and 9 --------------------------------

Graph mc_graph() { return testsupport::random_digraph(50, 0.1, 42); }

std::vector<NodePair> mc_pairs(const Graph& g) {
    SplitMix64 pick(derive_stream(4242, g.node_count(), 0));
    std::vector<NodePair> pairs;
    while (pairs.size() < 100) {
        NodeId a = static_cast<NodeId>(pick.next_below(g.node_count()));
        NodeId b = static_cast<NodeId>(pick.next_below(g.node_count()));
        if (a == b) continue;
        NodePair p{a, b};
        bool seen = false;
        for (NodePair q : pairs) seen = seen || q == p;
        if (!seen) pairs.push_back(p);
    }
    return pairs;
}

McConfig mc_cfg() { return {20000, 40, kDecay, 20240817}; }

struct EstimateRun {
    std::string tsv;
    std::vector<std::vector<Estimate>> per_measure;
};

EstimateRun run_mc_estimates(const Graph& g, const std::vector<MeasureSpec>& specs,
                             const std::vector<NodePair>& pairs,
                             const McConfig& cfg) {
    EstimateRun run;
    for (const auto& spec : specs) {
        auto kernel = make_kernel(spec, g);
        std::vector<Estimate> estimates;
        estimates.reserve(pairs.size());
        run.tsv += "# " + spec.to_string() + "\n";
        for (NodePair p : pairs) {
            Estimate est = estimate(*kernel, p, cfg);
            run.tsv += format_estimate_line(g, p, est, 6);
            estimates.push_back(est);
        }
        run.per_measure.push_back(std::move(estimates));
    }
    return run;
}

// ---- shared fixture for criteria 8 and 9 ---------------------------------

std::string run_cluster_eval(std::vector<double>* maps_out) {
    auto [g, labels] = testsupport::two_cluster_graph(20, 0.5, 8080);
    EvalConfig cfg;
    cfg.top_k = 10;
    cfg.num_queries = 10;
    cfg.num_trials = 5;
    cfg.min_in_degree = 5;
    cfg.min_out_degree = 5;
    cfg.radius = 4;
    cfg.mc = {200, 15, kDecay, 9090};
    cfg.seed = 9090;
    EvalReport report = eval_map(g, labels, six_measures(), cfg);
    if (maps_out) {
        maps_out->clear();
        for (const auto& me : report.measures) maps_out->push_back(me.mean_map);
    }
    std::ostringstream out;
    write_report(out, report);
    return out.str();
}

// ---- criteria -------------------------------------------------------------

void criterion1() {
    for (NodeId k : {NodeId(2), NodeId(4), NodeId(8)}) {
        auto [g, u, v] = testsupport::star_pair_graph(k);
        auto kernel = make_kernel(MeasureSpec::simrank(), g);
        double got = solve(g, *kernel, solve_cfg(1e-12)).at(u, v);
        double want = kDecay / k;
        require(std::abs(got - want) <= 1e-7,
                "k=" + std::to_string(k) + ": simrank " + fmt(got) +
                    " != C/k " + fmt(want));
    }
}

void criterion2() {
    for (NodeId k : {NodeId(2), NodeId(4), NodeId(8)}) {
        auto [g, u, v] = testsupport::star_pair_graph(k);
        auto kernel = make_kernel(MeasureSpec::psimrank(), g);
        double got = solve(g, *kernel, solve_cfg(1e-12)).at(u, v);
        require(std::abs(got - kDecay) <= 1e-7,
                "k=" + std::to_string(k) + ": psimrank " + fmt(got) + " != C");
    }
}

void criterion3() {
    auto [g, a, b] = testsupport::single_edge_graph();
    double plain = solve(g, *make_kernel(MeasureSpec::simrank(), g),
                         solve_cfg(1e-12)).at(a, b);
    double star = solve(g, *make_kernel(MeasureSpec::simrank_star(), g),
                        solve_cfg(1e-12)).at(a, b);
    double pstar = solve(g, *make_kernel(MeasureSpec::psimrank_star(), g),
                         solve_cfg(1e-12)).at(a, b);
    require(plain == 0.0, "simrank on the single edge is " + fmt(plain));
    require(std::abs(star - 0.4) <= 1e-7, "simrankstar " + fmt(star) + " != C/2");
    require(std::abs(pstar - 0.4) <= 1e-7, "psimrankstar " + fmt(pstar) + " != C/2");
}

void criterion4() {
    for (std::uint64_t seed = 101; seed <= 120; ++seed) {
        Graph g = testsupport::random_digraph(30, 0.1, seed);
        for (const auto& spec : six_measures()) {
            auto kernel = make_kernel(spec, g);
            std::vector<double> prev(SimilarityTable(g.node_count()).values());
            SimilarityTable table = solve(
                g, *kernel, solve_cfg(1e-9),
                [&](int, const std::vector<double>& cur, double) {
                    for (std::size_t i = 0; i < cur.size(); ++i) {
                        require(cur[i] >= prev[i] - 1e-12,
                                spec.to_string() + ": iterate decreased");
                        require(cur[i] >= -1e-12 && cur[i] <= 1.0 + 1e-12,
                                spec.to_string() + ": iterate left [0,1]");
                    }
                    prev = cur;
                });
            double r = residual(g, *kernel, table, kDecay);
            require(r < 1e-6, spec.to_string() + " seed " + std::to_string(seed) +
                                  ": residual " + fmt(r));
        }
    }
}

std::string g_mc_tsv;  // saved for the determinism criterion

void criterion5() {
    Graph g = mc_graph();
    std::vector<NodePair> pairs = mc_pairs(g);
    std::vector<MeasureSpec> specs = six_measures();
    McConfig cfg = mc_cfg();
    double bias = std::pow(kDecay, cfg.max_steps + 1) / (1.0 - kDecay);

    EstimateRun run = run_mc_estimates(g, specs, pairs, cfg);
    g_mc_tsv = run.tsv;

    for (std::size_t mi = 0; mi < specs.size(); ++mi) {
        auto kernel = make_kernel(specs[mi], g);
        SimilarityTable table = solve(g, *kernel, solve_cfg(1e-9));
        int hits = 0;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const Estimate& est = run.per_measure[mi][pi];
            double gap = std::abs(est.mean - table.at(pairs[pi].a, pairs[pi].b));
            if (gap <= 4.0 * est.std_error + bias) ++hits;
        }
        require(hits >= 95, specs[mi].to_string() + ": only " +
                                std::to_string(hits) + "/100 pairs within bound");
    }
}

void criterion6() {
    const int max_len = 25;
    double bound = std::pow(kDecay, max_len + 1) / (1.0 - kDecay) + 1e-9;
    std::vector<MeasureSpec> specs{MeasureSpec::simrank(), MeasureSpec::psimrank(),
                                   MeasureSpec::simrank_star(),
                                   MeasureSpec::psimrank_star()};
    for (std::uint64_t seed = 201; seed <= 210; ++seed) {
        Graph g = testsupport::random_digraph(3 + seed % 6, 0.3, seed);
        for (const auto& spec : specs) {
            auto kernel = make_kernel(spec, g);
            SimilarityTable table = solve(g, *kernel, solve_cfg(1e-12));
            for (NodeId a = 0; a < g.node_count(); ++a) {
                for (NodeId b = 0; b < g.node_count(); ++b) {
                    if (a == b) continue;
                    double enumerated = testsupport::walk_enumeration_similarity(
                        *kernel, {a, b}, kDecay, max_len);
                    double gap = std::abs(table.at(a, b) - enumerated);
                    require(gap <= bound,
                            spec.to_string() + " seed " + std::to_string(seed) +
                                " pair (" + std::to_string(a) + "," +
                                std::to_string(b) + "): gap " + fmt(gap));
                }
            }
        }
    }
}

void criterion7() {
    std::vector<Graph> graphs;
    graphs.push_back(testsupport::star_pair_graph(4).g);
    graphs.push_back(testsupport::single_edge_graph().g);
    for (std::uint64_t seed : {301ull, 302ull, 303ull})
        graphs.push_back(testsupport::random_digraph(30, 0.1, seed));

    for (const Graph& g : graphs) {
        auto simrank = make_kernel(MeasureSpec::simrank(), g);
        auto rvs = make_kernel(MeasureSpec::rvs_simrank(), g);
        auto edge1 = make_kernel(MeasureSpec::prank(1.0), g);
        auto edge0 = make_kernel(MeasureSpec::prank(0.0), g);

        auto identical = [](const TransitionDistribution& x,
                            const TransitionDistribution& y) {
            if (x.entries.size() != y.entries.size()) return false;
            if (x.stopped_mass != y.stopped_mass) return false;
            for (std::size_t i = 0; i < x.entries.size(); ++i)
                if (!(x.entries[i].target == y.entries[i].target) ||
                    x.entries[i].probability != y.entries[i].probability)
                    return false;
            return true;
        };
        for (NodeId a = 0; a < g.node_count(); ++a)
            for (NodeId b = 0; b < g.node_count(); ++b) {
                if (a == b) continue;
                require(identical(simrank->transition({a, b}),
                                  edge1->transition({a, b})),
                        "prank(1) distribution differs from simrank");
                require(identical(rvs->transition({a, b}),
                                  edge0->transition({a, b})),
                        "prank(0) distribution differs from rvs");
            }

        SimilarityTable t_sim = solve(g, *simrank, solve_cfg(1e-10));
        SimilarityTable t_e1 = solve(g, *edge1, solve_cfg(1e-10));
        SimilarityTable t_rvs = solve(g, *rvs, solve_cfg(1e-10));
        SimilarityTable t_e0 = solve(g, *edge0, solve_cfg(1e-10));
        for (std::size_t i = 0; i < t_sim.values().size(); ++i) {
            require(std::abs(t_sim.values()[i] - t_e1.values()[i]) <= 1e-12,
                    "prank(1) table differs from simrank");
            require(std::abs(t_rvs.values()[i] - t_e0.values()[i]) <= 1e-12,
                    "prank(0) table differs from rvs");
        }
    }
}

std::string g_eval_report;  // saved for the determinism criterion

void criterion8() {
    std::vector<double> maps;
    g_eval_report = run_cluster_eval(&maps);
    auto specs = six_measures();
    for (std::size_t i = 0; i < maps.size(); ++i)
        require(maps[i] == 1.0, specs[i].to_string() + ": MAP " + fmt(maps[i]) +
                                    " != 1 on separated clusters");
}

void criterion9() {
#ifdef _OPENMP
    int saved = omp_get_max_threads();
#endif
    Graph g = mc_graph();
    std::vector<NodePair> pairs = mc_pairs(g);
    std::vector<MeasureSpec> specs = six_measures();
    McConfig cfg = mc_cfg();

    std::vector<std::string> mc_runs, eval_runs;
    for (int workers : {1, 4, 8}) {
#ifdef _OPENMP
        omp_set_num_threads(workers);
#else
        (void)workers;
#endif
        mc_runs.push_back(run_mc_estimates(g, specs, pairs, cfg).tsv);
        eval_runs.push_back(run_cluster_eval(nullptr));
    }
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif

    for (const auto& run : mc_runs)
        require(run == mc_runs[0], "estimate output differs across worker counts");
    for (const auto& run : eval_runs)
        require(run == eval_runs[0], "eval report differs across worker counts");
    if (!g_mc_tsv.empty())
        require(mc_runs[0] == g_mc_tsv,
                "estimate output differs from the earlier run");
    if (!g_eval_report.empty())
        require(eval_runs[0] == g_eval_report,
                "eval report differs from the earlier run");
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<void()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "simrank is C/k on shared-parent stars (k=2,4,8)", 1.0, criterion1},
        {2, "psimrank stays at C on shared-parent stars", 1.0, criterion2},
        {3, "star variants score C/2 across the single edge", 1.0, criterion3},
        {4, "monotone bounded iterates and residual < 1e-6 on 20 digraphs", 120.0,
         criterion4},
        {5, "monte carlo matches the solver on 95/100 pairs per measure", 600.0,
         criterion5},
        {6, "truncated walk enumeration matches the solver on small graphs", 120.0,
         criterion6},
        {7, "prank(1)/prank(0) reproduce simrank/rvs exactly", 0.0, criterion7},
        {8, "separated clusters give MAP 1.0 for every measure", 60.0, criterion8},
        {9, "criteria 5 and 8 are byte-identical with 1, 4 and 8 workers", 0.0,
         criterion9},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (error.empty() && c.time_limit_s > 0 && elapsed > c.time_limit_s)
            error = "took " + fmt(elapsed) + "s, limit " + fmt(c.time_limit_s) + "s";
        if (error.empty()) {
            std::printf("PASS  %d  %s  (%.2fs)\n", c.id, c.name, elapsed);
        } else {
            std::printf("FAIL  %d  %s  (%.2fs): %s\n", c.id, c.name, elapsed,
                        error.c_str());
            ++failures;
        }
    }
    return failures;
}
