#include "msgvm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

namespace msgvm {

namespace {

// Shortest round-trippable decimal form of a weight.
std::string format_weight(double w) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
}

bool parse_weight(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

std::optional<VertexId> Graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double Graph::edge_weight(VertexId u, VertexId v) const {
    auto row = neighbors(u);
    check(v);
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& nb, VertexId x) { return nb.vertex < x; });
    if (it == row.end() || it->vertex != v) return 0.0;
    return it->weight;
}

GraphBuilder::GraphBuilder(std::size_t vertex_count) {
    labels_.reserve(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) intern(std::to_string(v));
}

VertexId GraphBuilder::intern(std::string label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<VertexId>(labels_.size());
    index_.emplace(label, id);
    labels_.push_back(std::move(label));
    return id;
}

void GraphBuilder::add_edge(VertexId u, VertexId v, double weight) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= labels_.size() ||
        static_cast<std::size_t>(v) >= labels_.size())
        throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop on vertex '" + labels_[u] + "'");
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("edge weight must be positive and finite");
    edges_.push_back({u, v, weight});
}

void GraphBuilder::add_edge(const std::string& u, const std::string& v, double weight) {
    const VertexId ui = intern(u);
    const VertexId vi = intern(v);
    add_edge(ui, vi, weight);
}

Graph GraphBuilder::build() {
    for (auto& e : edges_)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges_.begin(), edges_.end(),
              [](const RawEdge& a, const RawEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

    Graph g;
    const std::size_t n = labels_.size();
    g.labels_ = std::move(labels_);
    g.index_ = std::move(index_);
    g.adjacency_.resize(n);
    g.degree_.assign(n, 0.0);

    std::size_t i = 0;
    while (i < edges_.size()) {
        const VertexId u = edges_[i].u;
        const VertexId v = edges_[i].v;
        double w = 0.0;
        for (; i < edges_.size() && edges_[i].u == u && edges_[i].v == v; ++i) w += edges_[i].w;
        g.adjacency_[u].push_back({v, w});
        g.adjacency_[v].push_back({u, w});
        g.degree_[u] += w;
        g.degree_[v] += w;
        g.total_weight_ += w;
        ++g.edge_count_;
    }
    for (auto& row : g.adjacency_)
        std::sort(row.begin(), row.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    return g;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Graph parse_edge_list(std::istream& in, const ParseOptions& opts, ParseStats* stats) {
    GraphBuilder builder;
    ParseStats local;
    std::string line;
    std::string u, v, wtok, extra;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(line);
        if (!(tokens >> u)) continue;  // blank line
        if (u.front() == '#') continue;
        const bool have_v = static_cast<bool>(tokens >> v);
        const bool have_w = static_cast<bool>(tokens >> wtok);
        const bool have_extra = static_cast<bool>(tokens >> extra);
        if (!have_v || have_extra || have_w != opts.weighted)
            throw ParseError(lineno, opts.weighted ? "expected 'u v w'" : "expected 'u v'");
        double w = 1.0;
        if (opts.weighted) {
            if (!parse_weight(wtok, w)) throw ParseError(lineno, "malformed edge weight '" + wtok + "'");
            if (!(w > 0.0)) throw ParseError(lineno, "edge weight must be positive");
        }
        if (u == v) {
            if (opts.drop_self_loops) {
                ++local.dropped_self_loops;
                continue;
            }
            throw ParseError(lineno, "self-loop on vertex '" + u + "'");
        }
        builder.add_edge(u, v, w);
        ++local.edge_lines;
    }
    if (stats) *stats = local;
    return builder.build();
}

Graph load_edge_list(const std::string& path, const ParseOptions& opts, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_edge_list(in, opts, stats);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# N=" << g.vertex_count() << " M=" << g.edge_count()
        << " L=" << format_weight(g.total_weight()) << "\n";
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (const auto& nb : g.neighbors(u))
            if (nb.vertex > u)
                out << g.label(u) << ' ' << g.label(nb.vertex) << ' ' << format_weight(nb.weight)
                    << "\n";
}

Graph largest_component(const Graph& g) {
    const VertexId n = g.vertex_count();
    std::vector<std::int32_t> component(static_cast<std::size_t>(n), -1);
    std::int32_t best = -1;
    std::size_t best_size = 0;
    std::int32_t next_component = 0;
    std::deque<VertexId> queue;
    for (VertexId start = 0; start < n; ++start) {
        if (component[start] >= 0) continue;
        const std::int32_t id = next_component++;
        std::size_t size = 0;
        component[start] = id;
        queue.push_back(start);
        while (!queue.empty()) {
            const VertexId v = queue.front();
            queue.pop_front();
            ++size;
            for (const auto& nb : g.neighbors(v)) {
                if (component[nb.vertex] < 0) {
                    component[nb.vertex] = id;
                    queue.push_back(nb.vertex);
                }
            }
        }
        if (size > best_size) {  // strict: ties keep the earlier (smaller min index) component
            best_size = size;
            best = id;
        }
    }

    GraphBuilder builder;
    for (VertexId v = 0; v < n; ++v)
        if (component[v] == best) builder.intern(g.label(v));
    for (VertexId u = 0; u < n; ++u) {
        if (component[u] != best) continue;
        for (const auto& nb : g.neighbors(u))
            if (nb.vertex > u) builder.add_edge(g.label(u), g.label(nb.vertex), nb.weight);
    }
    return builder.build();
}

Graph permute_labels(const Graph& g, std::uint64_t seed) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<VertexId> new_index(n);
    std::iota(new_index.begin(), new_index.end(), 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(new_index.begin(), new_index.end(), rng);
    }
    std::vector<VertexId> old_at(n);
    for (std::size_t v = 0; v < n; ++v) old_at[static_cast<std::size_t>(new_index[v])] = static_cast<VertexId>(v);

    GraphBuilder builder;
    for (std::size_t p = 0; p < n; ++p) builder.intern(g.label(old_at[p]));
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (const auto& nb : g.neighbors(u))
            if (nb.vertex > u) builder.add_edge(new_index[static_cast<std::size_t>(u)],
                                                new_index[static_cast<std::size_t>(nb.vertex)], nb.weight);
    return builder.build();
}

bool same_labeled_graph(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    if (a.total_weight() != b.total_weight()) return false;
    for (VertexId u = 0; u < a.vertex_count(); ++u) {
        const auto bu = b.index_of(a.label(u));
        if (!bu) return false;
        for (const auto& nb : a.neighbors(u)) {
            if (nb.vertex <= u) continue;
            const auto bv = b.index_of(a.label(nb.vertex));
            if (!bv) return false;
            if (b.edge_weight(*bu, *bv) != nb.weight) return false;
        }
    }
    return true;
}

}  // namespace msgvm
