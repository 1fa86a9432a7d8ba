#pragma once

#include <utility>

#include "msgvm/graph.hpp"
#include "msgvm/msg.hpp"
#include "msgvm/partition.hpp"

namespace msgvm {

/// Classical greedy baseline: merges exactly the single best community pair
/// per step while the best gain is positive (ties by smallest pair indices).
/// Runs on the same engine and arithmetic as the multistep variant, so
/// comparisons isolate the merging schedule.
std::pair<Partition, MergeTrace> run_greedy(const Graph& g);

}  // namespace msgvm
