// Command-line front end: single runs, level sweeps, the classical greedy
// baseline, partition scoring, and the label-permutation robustness study.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "msgvm/graph.hpp"
#include "msgvm/greedy.hpp"
#include "msgvm/msg.hpp"
#include "msgvm/partition.hpp"
#include "msgvm/sweep.hpp"
#include "msgvm/vm.hpp"

namespace {

struct CommonOptions {
    std::string input;
    bool weighted = false;
    bool drop_self_loops = false;
    bool component_only = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--input", opts.input, "edge list file ('u v' or 'u v w' lines, '#' comments)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--weighted", opts.weighted, "read a third column with edge weights");
    cmd->add_flag("--drop-self-loops", opts.drop_self_loops, "skip self-loop lines instead of failing");
    cmd->add_flag("--component-only", opts.component_only, "restrict to the largest connected component");
}

msgvm::Graph load_graph(const CommonOptions& opts) {
    msgvm::ParseStats stats;
    msgvm::Graph g =
        msgvm::load_edge_list(opts.input, {opts.weighted, opts.drop_self_loops}, &stats);
    if (stats.dropped_self_loops > 0)
        std::cerr << "note: dropped " << stats.dropped_self_loops << " self-loop line(s)\n";
    if (opts.component_only) g = msgvm::largest_component(g);
    return g;
}

void emit_partition(const msgvm::Graph& g, const msgvm::Partition& p, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    msgvm::write_partition(g, p, out);
}

std::string fixed6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::pair<int, int> parse_level_range(const std::string& text, const msgvm::Graph& g) {
    if (text.empty()) return {1, msgvm::default_sweep_max(g)};
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("--levels expects MIN:MAX, got '" + text + "'");
    try {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        return {lo, hi};
    } catch (const std::exception&) {
        throw std::runtime_error("--levels expects MIN:MAX, got '" + text + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community detection by multistep greedy modularity optimization "
                 "with vertex-mover refinement"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    int run_level = 1;
    bool run_no_vm = false;
    std::string run_output;
    auto* run_cmd = app.add_subcommand("run", "single multistep run at a fixed level");
    add_common_options(run_cmd, run_opts);
    run_cmd->add_option("--level", run_level, "level parameter l")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--no-vm", run_no_vm, "skip the vertex-mover refinement");
    run_cmd->add_option("--output", run_output, "partition file to write");

    CommonOptions greedy_opts;
    std::string greedy_output;
    auto* greedy_cmd = app.add_subcommand("greedy", "classical single-pair greedy baseline");
    add_common_options(greedy_cmd, greedy_opts);
    greedy_cmd->add_option("--output", greedy_output, "partition file to write");

    CommonOptions sweep_opts;
    std::string sweep_levels;
    unsigned sweep_jobs = 1;
    std::string sweep_report;
    auto* sweep_cmd = app.add_subcommand("sweep", "run every level in a range, report the best");
    add_common_options(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--levels", sweep_levels, "level range MIN:MAX (default 1:min(5000,M-1))");
    sweep_cmd->add_option("--jobs", sweep_jobs, "concurrent runs")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--report", sweep_report, "TSV report path (default: stdout)");

    CommonOptions score_opts;
    std::string score_partition;
    auto* score_cmd = app.add_subcommand("score", "modularity of a stored partition");
    add_common_options(score_cmd, score_opts);
    score_cmd->add_option("--partition", score_partition, "partition file to score")
        ->required()
        ->check(CLI::ExistingFile);

    CommonOptions permute_opts;
    int permute_level = 1;
    std::size_t permute_count = 100;
    std::uint64_t permute_seed = 1;
    auto* permute_cmd =
        app.add_subcommand("permute", "robustness under seeded vertex relabelings");
    add_common_options(permute_cmd, permute_opts);
    permute_cmd->add_option("--level", permute_level, "level parameter l")->check(CLI::PositiveNumber);
    permute_cmd->add_option("--count", permute_count, "number of relabelings")
        ->check(CLI::PositiveNumber);
    permute_cmd->add_option("--seed", permute_seed, "base seed (trial t uses seed+t; seed 0 is identity)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run_cmd->parsed()) {
            const msgvm::Graph g = load_graph(run_opts);
            const msgvm::RunSummary rs = run_msg_vm(g, msgvm::MsgConfig{run_level}, !run_no_vm);
            emit_partition(g, rs.partition, run_output);
            std::cout << "Q_MSG=" << fixed6(rs.q_msg);
            if (!run_no_vm) std::cout << " Q_MSG-VM=" << fixed6(rs.q_msg_vm);
            std::cout << " N_C=" << rs.communities << " D=" << rs.depth
                      << " time_ms=" << fixed6(rs.millis) << "\n";
        } else if (greedy_cmd->parsed()) {
            const msgvm::Graph g = load_graph(greedy_opts);
            const auto start = std::chrono::steady_clock::now();
            const auto [partition, trace] = msgvm::run_greedy(g);
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
            emit_partition(g, partition, greedy_output);
            std::cout << "Q=" << fixed6(partition.modularity) << " N_C=" << partition.community_count
                      << " D=" << trace.depth() << " time_ms=" << fixed6(ms) << "\n";
        } else if (sweep_cmd->parsed()) {
            const msgvm::Graph g = load_graph(sweep_opts);
            const auto [l_min, l_max] = parse_level_range(sweep_levels, g);
            const msgvm::SweepResult result = msgvm::run_sweep(g, l_min, l_max, sweep_jobs);
            if (sweep_report.empty()) {
                msgvm::write_sweep_report(result, std::cout);
            } else {
                std::ofstream out(sweep_report);
                if (!out) throw std::runtime_error("cannot write '" + sweep_report + "'");
                msgvm::write_sweep_report(result, out);
            }
            std::cout << "l_opt=" << result.best().level << " Q=" << fixed6(result.best().q_msg_vm)
                      << "\n";
        } else if (score_cmd->parsed()) {
            const msgvm::Graph g = load_graph(score_opts);
            std::ifstream in(score_partition);
            if (!in) throw std::runtime_error("cannot open '" + score_partition + "'");
            const auto assignment = msgvm::read_partition(g, in);
            std::cout << fixed6(msgvm::score_modularity(g, assignment)) << "\n";
        } else if (permute_cmd->parsed()) {
            const msgvm::Graph g = load_graph(permute_opts);
            const msgvm::PermutationStudy study =
                msgvm::permutation_study(g, msgvm::MsgConfig{permute_level}, permute_count, permute_seed);
            std::cout << "base_q=" << fixed6(study.base_q) << "\n";
            std::cout << "runs=" << study.runs << " q_min=" << fixed6(study.q_min)
                      << " q_max=" << fixed6(study.q_max) << " q_mean=" << fixed6(study.q_mean)
                      << "\n";
            std::cout << "max_relative_improvement=" << fixed6(study.max_relative_improvement)
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
