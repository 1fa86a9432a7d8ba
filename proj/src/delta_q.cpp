#include "msgvm/delta_q.hpp"

#include <utility>

namespace msgvm {

DeltaQStore::DeltaQStore(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    rows_.resize(n);
    const double total = g.total_weight();
    if (!(total > 0.0)) return;
    const double norm = 2.0 * total * total;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (const auto& nb : g.neighbors(u)) {
            if (nb.vertex <= u) continue;
            const double dq = nb.weight / total - g.degree(u) * g.degree(nb.vertex) / norm;
            rows_[static_cast<std::size_t>(u)].emplace(nb.vertex, dq);
            rows_[static_cast<std::size_t>(nb.vertex)].emplace(u, dq);
            levels_.insert({dq, u, nb.vertex});
            ++work_;
        }
    }
}

std::optional<double> DeltaQStore::entry(CommunityId i, CommunityId j) const {
    if (i == j) return std::nullopt;
    const auto& row = rows_.at(static_cast<std::size_t>(i));
    const auto it = row.find(j);
    if (it == row.end()) return std::nullopt;
    return it->second;
}

void DeltaQStore::set_pair(CommunityId i, CommunityId j, double delta_q) {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("diagonal entries are not stored");
    auto& row_i = rows_.at(static_cast<std::size_t>(i));
    auto& row_j = rows_.at(static_cast<std::size_t>(j));
    const auto it = row_i.find(j);
    if (it != row_i.end()) {
        levels_.erase({it->second, i, j});
        it->second = delta_q;
        row_j[i] = delta_q;
    } else {
        row_i.emplace(j, delta_q);
        row_j.emplace(i, delta_q);
    }
    levels_.insert({delta_q, i, j});
    ++work_;
}

bool DeltaQStore::erase_pair(CommunityId i, CommunityId j) {
    if (i > j) std::swap(i, j);
    auto& row_i = rows_.at(static_cast<std::size_t>(i));
    const auto it = row_i.find(j);
    if (it == row_i.end()) return false;
    levels_.erase({it->second, i, j});
    row_i.erase(it);
    rows_[static_cast<std::size_t>(j)].erase(i);
    ++work_;
    return true;
}

}  // namespace msgvm
