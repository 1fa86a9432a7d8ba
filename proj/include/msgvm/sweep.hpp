#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "msgvm/graph.hpp"
#include "msgvm/msg.hpp"
#include "msgvm/partition.hpp"

namespace msgvm {

/// One multistep run plus optional vertex-mover refinement, timed.
struct RunSummary {
    double q_msg = 0.0;
    double q_msg_vm = 0.0;  // equals q_msg when refinement is off
    std::size_t communities = 0;
    std::size_t depth = 0;
    double millis = 0.0;
    std::uint64_t work = 0;
    Partition partition;
    MergeTrace trace;
};

RunSummary run_msg_vm(const Graph& g, const MsgConfig& cfg, bool refine = true);

struct SweepRecord {
    int level = 0;
    double q_msg = 0.0;
    double q_msg_vm = 0.0;
    std::size_t communities = 0;
    std::size_t depth = 0;
    double millis = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // ascending level
    std::size_t best_index = 0;        // maximal q_msg_vm, smallest level on ties
    const SweepRecord& best() const { return records[best_index]; }
};

/// Default sweep upper bound: min(5000, M-1), never below 1.
int default_sweep_max(const Graph& g);

/// Independent runs for every level in [l_min, l_max], optionally fanned out
/// over `jobs` threads sharing the immutable graph. Records are ordered by
/// level and identical for any job count.
SweepResult run_sweep(const Graph& g, int l_min, int l_max, unsigned jobs = 1,
                      double level_tolerance = 1e-9);

/// Tab-separated report: "l q_msg q_msgvm n_c depth ms", one row per level.
void write_sweep_report(const SweepResult& result, std::ostream& out);

/// Vertex-relabeling robustness study: `count` runs on seeded permutations of
/// the input (trial t uses seed `seed + t`), compared against the unpermuted
/// run.
struct PermutationStudy {
    std::size_t runs = 0;
    double base_q = 0.0;
    double q_min = 0.0;
    double q_max = 0.0;
    double q_mean = 0.0;
    /// (q_max - base_q) / |base_q|; absolute difference when base_q is ~0.
    double max_relative_improvement = 0.0;
};

PermutationStudy permutation_study(const Graph& g, const MsgConfig& cfg, std::size_t count,
                                   std::uint64_t seed);

}  // namespace msgvm
