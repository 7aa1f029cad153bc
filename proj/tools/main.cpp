#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "pairsim/errors.hpp"
#include "pairsim/eval.hpp"
#include "pairsim/graph.hpp"
#include "pairsim/io.hpp"
#include "pairsim/kernel.hpp"
#include "pairsim/measure.hpp"
#include "pairsim/montecarlo.hpp"
#include "pairsim/query.hpp"
#include "pairsim/solver.hpp"

namespace {

using namespace pairsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOptions {
    std::string graph_path;
    bool reverse = false;
    std::string output;  // empty = stdout
    bool full_precision = false;
    int workers = 0;  // 0 = library default

    int precision() const { return full_precision ? -1 : 6; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--graph", opts.graph_path, "edge list file (gzip ok)")
        ->required();
    cmd->add_flag("--reverse", opts.reverse,
                  "flip edge direction while loading");
    cmd->add_option("--output", opts.output, "write to this file instead of stdout");
    cmd->add_flag("--full-precision", opts.full_precision,
                  "print 17 significant digits instead of 6 decimals");
    cmd->add_option("--workers", opts.workers,
                    "cap on parallel workers (0 = default)");
}

Graph load_graph(const CommonOptions& opts) {
    Graph g = load_edge_list_file(opts.graph_path, {.reverse_edges = opts.reverse});
    if (g.duplicate_edges_collapsed() > 0)
        std::cerr << "warning: collapsed " << g.duplicate_edges_collapsed()
                  << " duplicate edge(s)\n";
    return g;
}

NodeId resolve_node(const Graph& g, const std::string& name) {
    auto id = g.find_node(name);
    if (!id) throw DataError("node '" + name + "' is not in the graph");
    return *id;
}

void emit(const CommonOptions& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opts.output, std::ios::binary);
    if (!file) throw DataError("cannot write to '" + opts.output + "'");
    file << text;
}

void apply_workers(const CommonOptions& opts) {
#ifdef _OPENMP
    if (opts.workers > 0) omp_set_num_threads(opts.workers);
#else
    (void)opts;
#endif
}

int run_solve(const CommonOptions& common, const std::string& measure,
              const SolveConfig& cfg, double threshold) {
    MeasureSpec spec = parse_measure_spec(measure);
    apply_workers(common);
    Graph g = load_graph(common);
    auto kernel = make_kernel(spec, g);
    SimilarityTable table = solve(g, *kernel, cfg);
    std::cerr << "converged in " << table.iterations_run
              << " iteration(s), final delta " << table.final_delta << "\n";
    std::ostringstream out;
    write_table(out, table, g, threshold, common.precision());
    emit(common, out.str());
    return kExitOk;
}

int run_estimate(const CommonOptions& common, const std::string& measure,
                 const std::string& pair_arg, const McConfig& cfg) {
    MeasureSpec spec = parse_measure_spec(measure);
    std::size_t comma = pair_arg.find(',');
    if (comma == std::string::npos)
        throw SpecError("--pair expects 'a,b', got '" + pair_arg + "'");
    apply_workers(common);
    Graph g = load_graph(common);
    NodePair pair{resolve_node(g, pair_arg.substr(0, comma)),
                  resolve_node(g, pair_arg.substr(comma + 1))};
    auto kernel = make_kernel(spec, g);
    Estimate est = estimate(*kernel, pair, cfg);
    emit(common, format_estimate_line(g, pair, est, common.precision()));
    return kExitOk;
}

int run_topk(const CommonOptions& common, const std::string& measure,
             const std::string& query_name, std::uint32_t k, std::uint32_t radius,
             const McConfig& cfg, bool drop_zero) {
    MeasureSpec spec = parse_measure_spec(measure);
    apply_workers(common);
    Graph g = load_graph(common);
    NodeId query = resolve_node(g, query_name);
    auto kernel = make_kernel(spec, g);
    QueryResult result = topk(g, *kernel, query, k, radius, cfg, drop_zero);
    std::cerr << "considered " << result.candidates_considered
              << " candidate(s) within radius " << radius << "\n";
    emit(common, format_topk(g, result, common.precision()));
    return kExitOk;
}

int run_eval(const CommonOptions& common, std::vector<std::string> measures,
             bool prank_sweep, const std::string& labels_path, EvalConfig cfg) {
    if (prank_sweep)
        for (int i = 0; i <= 10; ++i)
            measures.push_back("prank:lambda=" + format_value(i * 0.1, 1));
    if (measures.empty())
        throw SpecError("eval needs at least one --measure (or --prank-sweep)");
    std::vector<MeasureSpec> specs;
    for (const auto& m : measures) specs.push_back(parse_measure_spec(m));
    apply_workers(common);
    Graph g = load_graph(common);
    LabelMap labels = load_labels_file(labels_path, g);
    if (labels.unknown_tokens_skipped() > 0)
        std::cerr << "warning: skipped " << labels.unknown_tokens_skipped()
                  << " label line(s) naming unknown nodes\n";
    EvalReport report = eval_map(g, labels, specs, cfg);
    std::ostringstream out;
    write_report(out, report, common.precision());
    if (prank_sweep) {
        const MeasureEval* best = nullptr;
        for (const auto& me : report.measures)
            if (me.measure.starts_with("prank:") &&
                (!best || me.mean_map > best->mean_map))
                best = &me;
        if (best)
            out << "# best_prank\t" << best->measure << '\t'
                << format_value(best->mean_map, common.precision()) << '\n';
    }
    emit(common, out.str());
    return kExitOk;
}

int run_kernels() {
    std::cout <<
        "simrank                  both surfers step to uniform in-neighbors\n"
        "rvs                      both surfers step to uniform out-neighbors\n"
        "prank:lambda=L           coin(L): both step backward, else both forward\n"
        "psimrank                 Jaccard mass meets at a common in-neighbor,\n"
        "                         remainder pairs exclusive in-neighbors\n"
        "simrankstar              fair coin steps one surfer backward\n"
        "psimrankstar             Jaccard mass meets at a common in-neighbor,\n"
        "                         remainder steps one surfer backward\n"
        "convex:[m1@w1,m2@w2,..]  mixture of member kernels (weights sum to 1)\n"
        "product:m1,m2            independent per-surfer marginals; marginals\n"
        "                         are limited to simrank and rvs\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairsim: link-based node similarity via coupled random surfers"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand(
        "solve", "iterate the similarity fixed point over all node pairs");
    CommonOptions solve_common;
    add_common(solve_cmd, solve_common);
    std::string solve_measure;
    SolveConfig solve_cfg;
    double solve_threshold = 0.0;
    solve_cmd->add_option("--measure", solve_measure, "measure spec")->required();
    solve_cmd->add_option("--C", solve_cfg.decay, "decay constant (default 0.8)");
    solve_cmd->add_option("--epsilon", solve_cfg.epsilon,
                          "max-norm convergence threshold (default 1e-9)");
    solve_cmd->add_option("--max-iterations", solve_cfg.max_iterations,
                          "iteration cap (default 100)");
    solve_cmd->add_option("--memory-gate", solve_cfg.memory_gate,
                          "refuse dense solve above this many nodes (default 20000)");
    solve_cmd->add_option("--threshold", solve_threshold,
                          "only emit entries strictly above this value (default 0)");

    // estimate
    auto* est_cmd = app.add_subcommand(
        "estimate", "Monte Carlo similarity estimate for one node pair");
    CommonOptions est_common;
    add_common(est_cmd, est_common);
    std::string est_measure, est_pair;
    McConfig est_cfg;
    est_cmd->add_option("--measure", est_measure, "measure spec")->required();
    est_cmd->add_option("--pair", est_pair, "node pair 'a,b'")->required();
    est_cmd->add_option("--samples", est_cfg.samples, "walks to draw (default 200)");
    est_cmd->add_option("--max-steps", est_cfg.max_steps,
                        "walk truncation length (default 15)");
    est_cmd->add_option("--C", est_cfg.decay, "decay constant (default 0.8)");
    est_cmd->add_option("--seed", est_cfg.seed, "RNG seed (default 42)");

    // topk
    auto* topk_cmd = app.add_subcommand(
        "topk", "top-k most similar nodes within a radius of the query");
    CommonOptions topk_common;
    add_common(topk_cmd, topk_common);
    std::string topk_measure, topk_query;
    std::uint32_t topk_k = 100, topk_radius = 4;
    McConfig topk_cfg;
    bool topk_drop_zero = false;
    topk_cmd->add_option("--measure", topk_measure, "measure spec")->required();
    topk_cmd->add_option("--query", topk_query, "query node")->required();
    topk_cmd->add_option("--k", topk_k, "answer set size (default 100)");
    topk_cmd->add_option("--radius", topk_radius,
                         "undirected pruning radius (default 4)");
    topk_cmd->add_option("--samples", topk_cfg.samples, "walks per candidate (default 200)");
    topk_cmd->add_option("--max-steps", topk_cfg.max_steps,
                         "walk truncation length (default 15)");
    topk_cmd->add_option("--C", topk_cfg.decay, "decay constant (default 0.8)");
    topk_cmd->add_option("--seed", topk_cfg.seed, "RNG seed (default 42)");
    topk_cmd->add_flag("--drop-zero", topk_drop_zero,
                       "drop zero-mean candidates from the ranking");

    // eval
    auto* eval_cmd = app.add_subcommand(
        "eval", "mean average precision benchmark over labeled queries");
    CommonOptions eval_common;
    add_common(eval_cmd, eval_common);
    std::vector<std::string> eval_measures;
    bool eval_prank_sweep = false;
    std::string eval_labels;
    EvalConfig eval_cfg;
    eval_cmd->add_option("--measure", eval_measures, "measure spec (repeatable)");
    eval_cmd->add_flag("--prank-sweep", eval_prank_sweep,
                       "additionally evaluate prank with lambda 0.0 .. 1.0 step 0.1");
    eval_cmd->add_option("--labels", eval_labels, "label file (gzip ok)")->required();
    eval_cmd->add_option("--k", eval_cfg.top_k, "answer set size (default 100)");
    eval_cmd->add_option("--radius", eval_cfg.radius,
                         "undirected pruning radius (default 4)");
    eval_cmd->add_option("--num-queries", eval_cfg.num_queries,
                         "labeled query nodes per trial (default 50)");
    eval_cmd->add_option("--num-trials", eval_cfg.num_trials, "trials (default 50)");
    eval_cmd->add_option("--min-in-degree", eval_cfg.min_in_degree,
                         "eligibility: minimum citations (default 5)");
    eval_cmd->add_option("--min-out-degree", eval_cfg.min_out_degree,
                         "eligibility: minimum references (default 5)");
    eval_cmd->add_option("--samples", eval_cfg.mc.samples,
                         "walks per candidate (default 200)");
    eval_cmd->add_option("--max-steps", eval_cfg.mc.max_steps,
                         "walk truncation length (default 15)");
    eval_cmd->add_option("--C", eval_cfg.mc.decay, "decay constant (default 0.8)");
    eval_cmd->add_option("--seed", eval_cfg.seed,
                         "seed for query sampling and walks (default 42)");

    // kernels
    app.add_subcommand("kernels", "list built-in measure specs and their syntax");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(solve_common, solve_measure, solve_cfg, solve_threshold);
        if (est_cmd->parsed())
            return run_estimate(est_common, est_measure, est_pair, est_cfg);
        if (topk_cmd->parsed())
            return run_topk(topk_common, topk_measure, topk_query, topk_k,
                            topk_radius, topk_cfg, topk_drop_zero);
        if (eval_cmd->parsed()) {
            eval_cfg.mc.seed = eval_cfg.seed;
            return run_eval(eval_common, eval_measures, eval_prank_sweep,
                            eval_labels, eval_cfg);
        }
        return run_kernels();
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
