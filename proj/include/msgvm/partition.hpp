#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "msgvm/graph.hpp"

namespace msgvm {

using CommunityId = std::int32_t;

/// A vertex-to-community assignment together with per-community totals and a
/// cached modularity value. Community ids need not be dense; `renumber`
/// compacts them. Value type: copy freely, single writer per instance.
struct Partition {
    std::vector<CommunityId> assignment;   // per vertex
    std::vector<double> internal_weight;   // I(c): weight of edges inside community c
    std::vector<double> community_degree;  // d_c: summed vertex degrees of community c
    std::size_t community_count = 0;       // non-empty communities
    double modularity = 0.0;               // cached Q
};

/// Modularity of an assignment computed directly from its definition:
/// Q = sum_c [ I(c)/L - (d_c / 2L)^2 ]. One pass over edges, one over
/// vertices; the from-scratch reference for all incremental bookkeeping.
/// Graphs without edges score 0.
double score_modularity(const Graph& g, std::span<const CommunityId> assignment);

/// Builds a fully populated Partition from an assignment, everything
/// computed from scratch.
Partition make_partition(const Graph& g, std::vector<CommunityId> assignment);

/// Every vertex in its own community; Q set by the closed form
/// Q0 = -sum_v d_v^2 / (4 L^2).
Partition singleton_partition(const Graph& g);

/// Community ids remapped densely to 0..count-1 in order of first appearance
/// over vertices 0..N-1. Q unchanged.
Partition renumber(const Partition& p);

/// One "vertex_label community_id" line per vertex plus a "# Q=... N_C=..."
/// header. Expects dense community ids (see renumber).
void write_partition(const Graph& g, const Partition& p, std::ostream& out);

/// Reads the write_partition format; every vertex of g must be covered.
std::vector<CommunityId> read_partition(const Graph& g, std::istream& in);

}  // namespace msgvm
