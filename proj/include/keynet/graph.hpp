#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace keynet {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// Built once from an edge list, then immutable.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n < 0 ? 0 : n)) {}

    // Construct from an edge list. Self-loops are rejected, duplicates (in
    // either orientation) are rejected, endpoints must be in [0, n).
    static Graph from_edges(int n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj_[v]; }
    int degree(std::uint32_t v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    bool is_complete() const {
        auto nn = static_cast<std::size_t>(n());
        return nn < 2 || edge_count_ == nn * (nn - 1) / 2;
    }

    // Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

    // Edge-list text format: a header line "n m" followed by m lines "u v"
    // with u < v, sorted lexicographically, LF line endings.
    void write_edge_list(std::ostream& os) const;
    static Graph read_edge_list(std::istream& is);

  private:
    std::vector<std::vector<std::uint32_t>> adj_;
    std::size_t edge_count_ = 0;
};

// Intersection of two graphs on the same vertex set: an edge is present iff
// it is present in both. Throws std::invalid_argument on mismatched n.
Graph intersect(const Graph& a, const Graph& b);

} // namespace keynet
