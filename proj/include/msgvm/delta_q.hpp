#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "msgvm/graph.hpp"
#include "msgvm/partition.hpp"

namespace msgvm {

/// One connected community pair (i < j) and the modularity change a merge of
/// the two would yield.
struct LevelEntry {
    double delta_q;
    CommunityId i;
    CommunityId j;
};

/// Decreasing delta_q, then increasing (i, j).
struct LevelEntryOrder {
    bool operator()(const LevelEntry& a, const LevelEntry& b) const noexcept {
        if (a.delta_q != b.delta_q) return a.delta_q > b.delta_q;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

/// Globally ordered view of all candidate merges.
using LevelSet = std::set<LevelEntry, LevelEntryOrder>;

/// Sorted sparse row: connected neighbor community -> merge gain.
using DeltaQRow = std::map<CommunityId, double>;

/// Symmetric sparse matrix of pairwise merge gains for connected community
/// pairs, kept in lockstep with its ordered LevelSet view. Rows of absorbed
/// communities end up empty. Mutation goes through set_pair/erase_pair so the
/// two structures cannot drift apart.
class DeltaQStore {
public:
    DeltaQStore() = default;

    /// Singleton-stage initialization: one entry per distinct edge (u,v),
    /// delta_q = w/L - k_u k_v / (2 L^2).
    explicit DeltaQStore(const Graph& g);

    const std::vector<DeltaQRow>& rows() const noexcept { return rows_; }
    const DeltaQRow& row(CommunityId i) const { return rows_.at(static_cast<std::size_t>(i)); }
    const LevelSet& level_set() const noexcept { return levels_; }
    std::optional<double> entry(CommunityId i, CommunityId j) const;
    std::size_t pair_count() const noexcept { return levels_.size(); }

    /// Inserts or overwrites the symmetric pair entry and its level-set triplet.
    void set_pair(CommunityId i, CommunityId j, double delta_q);
    /// Removes the pair entry from both rows and the level set. False if absent.
    bool erase_pair(CommunityId i, CommunityId j);

    /// Structural operations performed so far (scaling diagnostics).
    std::uint64_t work() const noexcept { return work_; }

private:
    std::vector<DeltaQRow> rows_;
    LevelSet levels_;
    std::uint64_t work_ = 0;
};

}  // namespace msgvm
