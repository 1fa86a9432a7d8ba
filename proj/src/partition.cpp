#include "msgvm/partition.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace msgvm {

namespace {

CommunityId max_community_id(std::span<const CommunityId> assignment) {
    CommunityId max_id = -1;
    for (const CommunityId c : assignment) {
        if (c < 0) throw std::invalid_argument("community ids must be non-negative");
        max_id = std::max(max_id, c);
    }
    return max_id;
}

}  // namespace

double score_modularity(const Graph& g, std::span<const CommunityId> assignment) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    if (assignment.size() != n)
        throw std::invalid_argument("assignment length does not match vertex count");
    const CommunityId max_id = max_community_id(assignment);
    const double total = g.total_weight();
    if (!(total > 0.0)) return 0.0;

    std::vector<double> internal(static_cast<std::size_t>(max_id + 1), 0.0);
    std::vector<double> degree_sum(static_cast<std::size_t>(max_id + 1), 0.0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const CommunityId c = assignment[static_cast<std::size_t>(v)];
        degree_sum[static_cast<std::size_t>(c)] += g.degree(v);
        for (const auto& nb : g.neighbors(v))
            if (nb.vertex > v && assignment[static_cast<std::size_t>(nb.vertex)] == c)
                internal[static_cast<std::size_t>(c)] += nb.weight;
    }

    double q = 0.0;
    for (std::size_t c = 0; c < internal.size(); ++c) {
        const double frac = degree_sum[c] / (2.0 * total);
        q += internal[c] / total - frac * frac;
    }
    return q;
}

Partition make_partition(const Graph& g, std::vector<CommunityId> assignment) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    if (assignment.size() != n)
        throw std::invalid_argument("assignment length does not match vertex count");
    const CommunityId max_id = max_community_id(assignment);

    Partition p;
    p.internal_weight.assign(static_cast<std::size_t>(max_id + 1), 0.0);
    p.community_degree.assign(static_cast<std::size_t>(max_id + 1), 0.0);
    std::vector<char> occupied(static_cast<std::size_t>(max_id + 1), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto c = static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)]);
        occupied[c] = 1;
        p.community_degree[c] += g.degree(v);
        for (const auto& nb : g.neighbors(v))
            if (nb.vertex > v && assignment[static_cast<std::size_t>(nb.vertex)] == assignment[static_cast<std::size_t>(v)])
                p.internal_weight[c] += nb.weight;
    }
    p.community_count = static_cast<std::size_t>(std::count(occupied.begin(), occupied.end(), 1));
    p.modularity = score_modularity(g, assignment);
    p.assignment = std::move(assignment);
    return p;
}

Partition singleton_partition(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    Partition p;
    p.assignment.resize(n);
    p.internal_weight.assign(n, 0.0);
    p.community_degree.resize(n);
    p.community_count = n;
    const double total = g.total_weight();
    double degree_square_sum = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const double d = g.degree(v);
        p.assignment[static_cast<std::size_t>(v)] = static_cast<CommunityId>(v);
        p.community_degree[static_cast<std::size_t>(v)] = d;
        degree_square_sum += d * d;
    }
    p.modularity = total > 0.0 ? -degree_square_sum / (4.0 * total * total) : 0.0;
    return p;
}

Partition renumber(const Partition& p) {
    const std::size_t old_space = std::max(p.internal_weight.size(), p.community_degree.size());
    std::vector<CommunityId> remap(old_space, -1);
    CommunityId next = 0;
    Partition out;
    out.assignment.resize(p.assignment.size());
    for (std::size_t v = 0; v < p.assignment.size(); ++v) {
        const auto c = static_cast<std::size_t>(p.assignment[v]);
        if (remap[c] < 0) remap[c] = next++;
        out.assignment[v] = remap[c];
    }
    out.internal_weight.assign(static_cast<std::size_t>(next), 0.0);
    out.community_degree.assign(static_cast<std::size_t>(next), 0.0);
    for (std::size_t c = 0; c < old_space; ++c) {
        if (remap[c] < 0) continue;
        const auto to = static_cast<std::size_t>(remap[c]);
        if (c < p.internal_weight.size()) out.internal_weight[to] = p.internal_weight[c];
        if (c < p.community_degree.size()) out.community_degree[to] = p.community_degree[c];
    }
    out.community_count = static_cast<std::size_t>(next);
    out.modularity = p.modularity;
    return out;
}

void write_partition(const Graph& g, const Partition& p, std::ostream& out) {
    char q[32];
    std::snprintf(q, sizeof(q), "%.6f", p.modularity);
    out << "# Q=" << q << " N_C=" << p.community_count << "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out << g.label(v) << ' ' << p.assignment[static_cast<std::size_t>(v)] << "\n";
}

std::vector<CommunityId> read_partition(const Graph& g, std::istream& in) {
    std::vector<CommunityId> assignment(static_cast<std::size_t>(g.vertex_count()), -1);
    std::string line, label, ctok, extra;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(line);
        if (!(tokens >> label)) continue;
        if (label.front() == '#') continue;
        if (!(tokens >> ctok) || (tokens >> extra))
            throw ParseError(lineno, "expected 'vertex_label community_id'");
        const auto v = g.index_of(label);
        if (!v) throw ParseError(lineno, "unknown vertex '" + label + "'");
        CommunityId c = -1;
        try {
            c = static_cast<CommunityId>(std::stol(ctok));
        } catch (const std::exception&) {
            throw ParseError(lineno, "malformed community id '" + ctok + "'");
        }
        if (c < 0) throw ParseError(lineno, "community id must be non-negative");
        if (assignment[static_cast<std::size_t>(*v)] >= 0)
            throw ParseError(lineno, "vertex '" + label + "' assigned twice");
        assignment[static_cast<std::size_t>(*v)] = c;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (assignment[static_cast<std::size_t>(v)] < 0)
            throw std::runtime_error("vertex '" + g.label(v) + "' missing from partition file");
    return assignment;
}

}  // namespace msgvm
