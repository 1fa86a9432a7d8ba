#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace msgvm {

using VertexId = std::int32_t;

struct Neighbor {
    VertexId vertex;
    double weight;
};

/// Undirected weighted graph with dense vertex indices 0..N-1.
///
/// Indices are assigned in order of first appearance of the external labels;
/// parallel edges are accumulated into a single weighted edge. Instances are
/// immutable once built and safe to share across threads.
class Graph {
public:
    Graph() = default;

    VertexId vertex_count() const noexcept { return static_cast<VertexId>(labels_.size()); }
    /// Number of distinct edges M.
    std::size_t edge_count() const noexcept { return edge_count_; }
    /// Total edge weight L (each distinct edge counted once).
    double total_weight() const noexcept { return total_weight_; }

    /// Weighted degree k_v (sum of incident edge weights).
    double degree(VertexId v) const { return degree_[check(v)]; }
    /// Adjacency row of v, sorted by neighbor index.
    std::span<const Neighbor> neighbors(VertexId v) const {
        const auto& row = adjacency_[check(v)];
        return {row.data(), row.size()};
    }
    const std::string& label(VertexId v) const { return labels_[check(v)]; }
    std::optional<VertexId> index_of(const std::string& label) const;
    /// Weight of edge (u,v); 0 when not adjacent.
    double edge_weight(VertexId u, VertexId v) const;

private:
    friend class GraphBuilder;
    std::size_t check(VertexId v) const {
        if (v < 0 || v >= vertex_count()) throw std::out_of_range("vertex index out of range");
        return static_cast<std::size_t>(v);
    }

    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<double> degree_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> index_;
    double total_weight_ = 0.0;
    std::size_t edge_count_ = 0;
};

/// Assembles a Graph. Duplicate edges accumulate their weights; self-loops
/// and non-positive weights are rejected.
class GraphBuilder {
public:
    GraphBuilder() = default;
    /// Pre-creates `vertex_count` vertices labeled "0".."n-1".
    explicit GraphBuilder(std::size_t vertex_count);

    /// Index of `label`, assigning the next dense index on first appearance.
    VertexId intern(std::string label);
    void add_edge(VertexId u, VertexId v, double weight);
    void add_edge(const std::string& u, const std::string& v, double weight);
    std::size_t vertex_count() const noexcept { return labels_.size(); }

    Graph build();

private:
    struct RawEdge {
        VertexId u, v;
        double w;
    };
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<RawEdge> edges_;
};

struct ParseOptions {
    bool weighted = false;         // require a third column with the edge weight
    bool drop_self_loops = false;  // skip self-loop lines instead of failing
};

struct ParseStats {
    std::size_t edge_lines = 0;
    std::size_t dropped_self_loops = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads "u v [w]" lines; '#' lines are comments, blank lines are skipped.
Graph parse_edge_list(std::istream& in, const ParseOptions& opts = {}, ParseStats* stats = nullptr);
Graph load_edge_list(const std::string& path, const ParseOptions& opts = {}, ParseStats* stats = nullptr);

/// Emits one "label_u label_v w" line per distinct edge, sorted by
/// (min index, max index), preceded by a "# N=... M=... L=..." header.
void write_edge_list(const Graph& g, std::ostream& out);

/// Induced subgraph on the largest connected vertex set; ties go to the
/// component holding the smallest vertex index. Labels are preserved and
/// indices re-densified in original index order.
Graph largest_component(const Graph& g);

/// Topology-preserving relabeling: dense indices are permuted by a
/// deterministic seeded shuffle. Seed 0 yields the identity permutation.
Graph permute_labels(const Graph& g, std::uint64_t seed);

/// True when both graphs have the same labels and the same weighted edges
/// between them (dense index order may differ).
bool same_labeled_graph(const Graph& a, const Graph& b);

}  // namespace msgvm
