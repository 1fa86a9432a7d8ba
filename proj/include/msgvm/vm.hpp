#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msgvm/graph.hpp"
#include "msgvm/partition.hpp"

namespace msgvm {

/// Everything that determines the modularity change of reassigning `vertex`
/// from its community to `target`:
///
///   gain = (links_to_target - links_to_source) / L
///          - vertex_degree * (target_degree - source_degree_without) / (2 L^2)
///
/// with links_to_source excluding the vertex itself. When target == source
/// the move is the identity (target_degree enters without the vertex) and
/// the gain is exactly 0.
struct MoveGain {
    VertexId vertex;
    CommunityId source;
    CommunityId target;
    double links_to_target;        // edge weight between vertex and target members
    double links_to_source;        // edge weight between vertex and other source members
    double vertex_degree;          // k_v
    double source_degree_without;  // d_source - k_v
    double target_degree;          // d_target
    double gain;
};

/// Gain of moving v to `target`, computed from one pass over v's adjacency.
MoveGain move_gain(const Graph& g, const Partition& p, VertexId v, CommunityId target);

/// Local refinement: vertices are visited in order of increasing weighted
/// degree (vertex index breaking ties) and greedily reassigned to the
/// neighboring community with the largest strictly positive gain, smallest
/// community index on ties. Moves apply immediately; passes repeat until one
/// performs no move.
class VertexMover {
public:
    VertexMover(const Graph& g, Partition p);

    const std::vector<VertexId>& order() const noexcept { return order_; }
    /// Best strictly improving reassignment for v, if any.
    std::optional<MoveGain> best_target(VertexId v);
    /// Applies a move produced by best_target/move_gain against the current state.
    void apply(const MoveGain& move);
    /// One full pass over the vertex order; true if at least one move applied.
    bool sweep();
    /// Sweeps to the fixed point and returns the renumbered partition.
    Partition finish();

    const Partition& partition() const noexcept { return p_; }
    std::size_t move_count() const noexcept { return moves_; }
    std::uint64_t work() const noexcept { return work_; }

private:
    const Graph* graph_;
    Partition p_;
    std::vector<VertexId> order_;
    std::vector<double> links_;       // scratch: community -> accumulated edge weight
    std::vector<CommunityId> seen_;   // scratch: communities touched in links_
    std::vector<std::int64_t> size_;  // members per community
    std::size_t moves_ = 0;
    std::uint64_t work_ = 0;
};

/// Runs the vertex mover to its fixed point.
Partition run_vm(const Graph& g, Partition p);

}  // namespace msgvm
