#include "msgvm/msg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace msgvm {

std::size_t MergeTrace::merge_count() const noexcept {
    std::size_t total = 0;
    for (const auto& iteration : iterations) total += iteration.size();
    return total;
}

std::vector<LevelEntry> select_merge_pairs(const LevelSet& levels, const MsgConfig& cfg) {
    std::vector<LevelEntry> picked;
    int level_count = 0;
    double level_head = 0.0;
    for (const auto& entry : levels) {
        if (!(entry.delta_q > 0.0)) break;
        if (level_count == 0) {
            level_count = 1;
            level_head = entry.delta_q;
        } else if (level_head - entry.delta_q > cfg.level_tolerance * level_head) {
            if (++level_count > cfg.level_parameter) break;
            level_head = entry.delta_q;
        }
        picked.push_back(entry);
    }
    return picked;
}

namespace {

MsgConfig validated(const MsgConfig& cfg) {
    if (cfg.level_parameter < 1) throw std::invalid_argument("level parameter must be at least 1");
    if (!(cfg.level_tolerance >= 0.0))
        throw std::invalid_argument("level tolerance must be non-negative");
    return cfg;
}

}  // namespace

MsgEngine::MsgEngine(const Graph& g, const MsgConfig& cfg)
    : graph_(&g), cfg_(validated(cfg)), store_(g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    degree_.resize(n);
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    touched_.assign(n, 0);
    live_ = n;

    const double total = g.total_weight();
    double degree_square_sum = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        degree_[static_cast<std::size_t>(v)] = g.degree(v);
        degree_square_sum += g.degree(v) * g.degree(v);
    }
    q_ = total > 0.0 ? -degree_square_sum / (4.0 * total * total) : 0.0;
}

bool MsgEngine::converged() const {
    const auto& levels = store_.level_set();
    return levels.empty() || !(levels.begin()->delta_q > 0.0);
}

CommunityId MsgEngine::find(CommunityId v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) {
        parent_[static_cast<std::size_t>(v)] =
            parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
        v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
}

bool MsgEngine::alive(CommunityId c) const {
    if (c < 0 || static_cast<std::size_t>(c) >= parent_.size()) return false;
    return parent_[static_cast<std::size_t>(c)] == c;
}

double MsgEngine::community_degree(CommunityId c) const {
    return degree_.at(static_cast<std::size_t>(c));
}

std::vector<CommunityId> MsgEngine::assignment() const {
    std::vector<CommunityId> out(parent_.size());
    for (std::size_t v = 0; v < parent_.size(); ++v) out[v] = find(static_cast<CommunityId>(v));
    return out;
}

Partition MsgEngine::partition() const {
    Partition p = make_partition(*graph_, assignment());
    p.modularity = q_;  // incrementally maintained value
    return p;
}

void MsgEngine::do_merge(CommunityId i, CommunityId j) {
    const double total = graph_->total_weight();
    const double norm = 2.0 * total * total;
    const double degree_i = degree_[static_cast<std::size_t>(i)];
    const double degree_j = degree_[static_cast<std::size_t>(j)];

    const auto& row_i = store_.row(i);
    const auto& row_j = store_.row(j);
    auto it_i = row_i.begin();
    auto it_j = row_j.begin();
    merge_scratch_.clear();
    while (it_i != row_i.end() || it_j != row_j.end()) {
        if (it_i != row_i.end() && it_i->first == j) {
            ++it_i;
            continue;
        }
        if (it_j != row_j.end() && it_j->first == i) {
            ++it_j;
            continue;
        }
        ++walk_work_;
        if (it_j == row_j.end() || (it_i != row_i.end() && it_i->first < it_j->first)) {
            // only i is connected to k
            const CommunityId k = it_i->first;
            const double dq = it_i->second - degree_j * degree_[static_cast<std::size_t>(k)] / norm;
            merge_scratch_.push_back({k, dq, false});
            ++it_i;
        } else if (it_i == row_i.end() || it_j->first < it_i->first) {
            // only j is connected to k
            const CommunityId k = it_j->first;
            const double dq = it_j->second - degree_i * degree_[static_cast<std::size_t>(k)] / norm;
            merge_scratch_.push_back({k, dq, true});
            ++it_j;
        } else {
            // both connected: gains add up exactly
            const CommunityId k = it_i->first;
            merge_scratch_.push_back({k, it_i->second + it_j->second, true});
            ++it_i;
            ++it_j;
        }
    }

    q_ += *store_.entry(i, j);
    store_.erase_pair(i, j);
    for (const auto& m : merge_scratch_) {
        if (m.in_j_row) store_.erase_pair(j, m.k);
        store_.set_pair(i, m.k, m.delta_q);
    }
    assert(store_.row(j).empty());

    degree_[static_cast<std::size_t>(i)] += degree_j;
    degree_[static_cast<std::size_t>(j)] = 0.0;
    parent_[static_cast<std::size_t>(j)] = i;
    --live_;
}

void MsgEngine::merge_communities(CommunityId i, CommunityId j) {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("cannot merge a community with itself");
    if (!alive(i) || !alive(j)) throw std::invalid_argument("cannot merge a dead community");
    if (!store_.entry(i, j)) throw std::invalid_argument("communities are not connected");
    do_merge(i, j);
}

bool MsgEngine::iterate() {
    const auto picked = select_merge_pairs(store_.level_set(), cfg_);
    if (picked.empty()) return false;
    std::fill(touched_.begin(), touched_.end(), 0);
    std::vector<Merge> merges;
    for (const auto& entry : picked) {
        if (touched_[static_cast<std::size_t>(entry.i)] || touched_[static_cast<std::size_t>(entry.j)])
            continue;
        do_merge(entry.i, entry.j);
        touched_[static_cast<std::size_t>(entry.i)] = 1;
        touched_[static_cast<std::size_t>(entry.j)] = 1;
        merges.push_back({entry.i, entry.j, entry.delta_q});
    }
    trace_.iterations.push_back(std::move(merges));
    return true;
}

bool MsgEngine::merge_best() {
    const auto& levels = store_.level_set();
    if (levels.empty() || !(levels.begin()->delta_q > 0.0)) return false;
    const LevelEntry head = *levels.begin();
    do_merge(head.i, head.j);
    trace_.iterations.push_back({Merge{head.i, head.j, head.delta_q}});
    return true;
}

std::pair<Partition, MergeTrace> run_msg(const Graph& g, const MsgConfig& cfg) {
    MsgEngine engine(g, cfg);
    while (engine.iterate()) {
    }
    return {renumber(engine.partition()), engine.trace()};
}

}  // namespace msgvm
