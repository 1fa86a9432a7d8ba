#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msgvm/delta_q.hpp"
#include "msgvm/graph.hpp"
#include "msgvm/partition.hpp"

namespace msgvm {

struct MsgConfig {
    /// Number of top gain levels whose pairs are eligible per iteration (>= 1).
    int level_parameter = 1;
    /// Two gains whose relative difference is below this share one level.
    double level_tolerance = 1e-9;
};

struct Merge {
    CommunityId into;  // surviving community (the smaller index)
    CommunityId from;  // absorbed community (its row is emptied)
    double delta_q;
};

struct MergeTrace {
    std::vector<std::vector<Merge>> iterations;

    /// Dendrogram depth D: number of outer iterations performed.
    std::size_t depth() const noexcept { return iterations.size(); }
    std::size_t merge_count() const noexcept;
};

/// Positive-gain level-set entries whose gain lies within the top
/// cfg.level_parameter distinct values, in level-set order. Gains within
/// cfg.level_tolerance relative difference of the level head count as the
/// same level.
std::vector<LevelEntry> select_merge_pairs(const LevelSet& levels, const MsgConfig& cfg);

/// Agglomerative modularity optimizer. Communities start as singletons and
/// are merged while positive-gain pairs remain; modularity and the gain
/// matrix are maintained incrementally.
///
/// iterate() performs one multistep round: the pair list is frozen up front
/// and applied in order, skipping any pair whose endpoint was already merged
/// in the round. merge_best() performs a single classical greedy step. A
/// single engine is strictly single-threaded; independent engines may share
/// one Graph.
class MsgEngine {
public:
    explicit MsgEngine(const Graph& g, const MsgConfig& cfg = {});

    /// True when no remaining pair has a positive gain.
    bool converged() const;
    /// One multistep iteration. False (and no trace entry) if converged.
    bool iterate();
    /// One classical greedy step: merge the level-set head if its gain is
    /// positive. Recorded as its own trace iteration.
    bool merge_best();
    /// Merges live, connected communities i and j (j's row is emptied, i
    /// survives, degrees and modularity updated). Not recorded in the trace.
    void merge_communities(CommunityId i, CommunityId j);

    double modularity() const noexcept { return q_; }
    std::size_t community_count() const noexcept { return live_; }
    double community_degree(CommunityId c) const;
    bool alive(CommunityId c) const;
    /// Current community index of every vertex.
    std::vector<CommunityId> assignment() const;
    /// Materialized partition; totals from scratch, modularity the
    /// incrementally maintained value.
    Partition partition() const;

    const DeltaQStore& store() const noexcept { return store_; }
    const MergeTrace& trace() const noexcept { return trace_; }
    const MsgConfig& config() const noexcept { return cfg_; }
    std::uint64_t work() const noexcept { return store_.work() + walk_work_; }

private:
    CommunityId find(CommunityId v) const;
    void do_merge(CommunityId i, CommunityId j);

    const Graph* graph_;
    MsgConfig cfg_;
    DeltaQStore store_;
    std::vector<double> degree_;               // d_c, indexed by community
    mutable std::vector<CommunityId> parent_;  // membership forest, root = community index
    std::vector<char> touched_;                // per-iteration merge flags, sized N
    MergeTrace trace_;
    double q_ = 0.0;
    std::size_t live_ = 0;
    std::uint64_t walk_work_ = 0;

    struct MergedEntry {
        CommunityId k;
        double delta_q;
        bool in_j_row;
    };
    std::vector<MergedEntry> merge_scratch_;
};

/// Runs the multistep greedy to convergence. Deterministic for a fixed
/// labeled graph and config. Returns the renumbered partition and the trace.
std::pair<Partition, MergeTrace> run_msg(const Graph& g, const MsgConfig& cfg = {});

}  // namespace msgvm
