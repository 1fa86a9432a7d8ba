#include "msgvm/vm.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace msgvm {

namespace {

std::size_t community_space(const Partition& p) {
    return std::max(p.internal_weight.size(), p.community_degree.size());
}

void check_vertex(const Graph& g, VertexId v) {
    if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("vertex index out of range");
}

}  // namespace

MoveGain move_gain(const Graph& g, const Partition& p, VertexId v, CommunityId target) {
    check_vertex(g, v);
    if (target < 0 || static_cast<std::size_t>(target) >= community_space(p))
        throw std::out_of_range("community index out of range");

    const CommunityId source = p.assignment[static_cast<std::size_t>(v)];
    double links_target = 0.0;
    double links_source = 0.0;
    for (const auto& nb : g.neighbors(v)) {
        const CommunityId c = p.assignment[static_cast<std::size_t>(nb.vertex)];
        if (c == target) links_target += nb.weight;
        if (c == source) links_source += nb.weight;
    }

    const double total = g.total_weight();
    const double k_v = g.degree(v);
    const double source_rest = p.community_degree[static_cast<std::size_t>(source)] - k_v;
    const double target_degree = p.community_degree[static_cast<std::size_t>(target)];
    // joining the own community again is the identity: the vertex does not
    // count toward the target degree, which makes the gain exactly zero
    const double target_effective = target == source ? target_degree - k_v : target_degree;
    const double gain =
        total > 0.0
            ? (links_target - links_source) / total -
                  k_v * (target_effective - source_rest) / (2.0 * total * total)
            : 0.0;
    return {v, source, target, links_target, links_source, k_v, source_rest, target_degree, gain};
}

VertexMover::VertexMover(const Graph& g, Partition p) : graph_(&g), p_(std::move(p)) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    if (p_.assignment.size() != n)
        throw std::invalid_argument("partition does not match the graph");
    const std::size_t space = community_space(p_);
    links_.assign(space, 0.0);
    size_.assign(space, 0);
    for (const CommunityId c : p_.assignment) {
        if (c < 0 || static_cast<std::size_t>(c) >= space)
            throw std::invalid_argument("partition community ids exceed its totals");
        ++size_[static_cast<std::size_t>(c)];
    }

    order_.resize(n);
    for (std::size_t v = 0; v < n; ++v) order_[v] = static_cast<VertexId>(v);
    std::sort(order_.begin(), order_.end(), [&g](VertexId a, VertexId b) {
        const double da = g.degree(a);
        const double db = g.degree(b);
        if (da != db) return da < db;
        return a < b;
    });
}

std::optional<MoveGain> VertexMover::best_target(VertexId v) {
    check_vertex(*graph_, v);
    const CommunityId source = p_.assignment[static_cast<std::size_t>(v)];
    seen_.clear();
    for (const auto& nb : graph_->neighbors(v)) {
        const CommunityId c = p_.assignment[static_cast<std::size_t>(nb.vertex)];
        if (links_[static_cast<std::size_t>(c)] == 0.0) seen_.push_back(c);
        links_[static_cast<std::size_t>(c)] += nb.weight;
        ++work_;
    }
    const double links_source = links_[static_cast<std::size_t>(source)];
    std::sort(seen_.begin(), seen_.end());

    const double total = graph_->total_weight();
    const double k_v = graph_->degree(v);
    const double source_rest = p_.community_degree[static_cast<std::size_t>(source)] - k_v;
    double best_gain = 0.0;
    CommunityId best = -1;
    double best_links = 0.0;
    for (const CommunityId c : seen_) {
        if (c == source) continue;
        const double gain = (links_[static_cast<std::size_t>(c)] - links_source) / total -
                            k_v * (p_.community_degree[static_cast<std::size_t>(c)] - source_rest) /
                                (2.0 * total * total);
        if (gain > best_gain) {  // strict: equal gains keep the smaller community index
            best_gain = gain;
            best = c;
            best_links = links_[static_cast<std::size_t>(c)];
        }
    }
    for (const CommunityId c : seen_) links_[static_cast<std::size_t>(c)] = 0.0;
    if (best < 0) return std::nullopt;
    return MoveGain{v,          source,      best, best_links,
                    links_source, k_v,       source_rest,
                    p_.community_degree[static_cast<std::size_t>(best)], best_gain};
}

void VertexMover::apply(const MoveGain& move) {
    const auto v = static_cast<std::size_t>(move.vertex);
    if (v >= p_.assignment.size() || p_.assignment[v] != move.source)
        throw std::invalid_argument("move does not match the current partition");
    const auto src = static_cast<std::size_t>(move.source);
    const auto dst = static_cast<std::size_t>(move.target);
    p_.assignment[v] = move.target;
    p_.community_degree[src] -= move.vertex_degree;
    p_.community_degree[dst] += move.vertex_degree;
    p_.internal_weight[src] -= move.links_to_source;
    p_.internal_weight[dst] += move.links_to_target;
    p_.modularity += move.gain;
    --size_[src];
    ++size_[dst];
    if (size_[src] == 0) --p_.community_count;
    ++moves_;
}

bool VertexMover::sweep() {
    bool moved = false;
    for (const VertexId v : order_) {
        if (auto best = best_target(v)) {
            apply(*best);
            moved = true;
        }
    }
    return moved;
}

Partition VertexMover::finish() {
    while (sweep()) {
    }
    return renumber(p_);
}

Partition run_vm(const Graph& g, Partition p) {
    VertexMover mover(g, std::move(p));
    return mover.finish();
}

}  // namespace msgvm
