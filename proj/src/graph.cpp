#include "keynet/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace keynet {

Graph Graph::from_edges(int n,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u >= static_cast<std::uint32_t>(n) || v >= static_cast<std::uint32_t>(n))
            throw std::invalid_argument("edge endpoint out of range");
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("duplicate edge in edge list");
    }
    g.edge_count_ = edges.size();
    return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(edge_count_);
    for (std::uint32_t u = 0; u < adj_.size(); ++u)
        for (std::uint32_t v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out; // adjacency lists are sorted, so this order is lexicographic
}

void Graph::write_edge_list(std::ostream& os) const {
    os << n() << ' ' << edge_count_ << '\n';
    for (std::uint32_t u = 0; u < adj_.size(); ++u)
        for (std::uint32_t v : adj_[u])
            if (u < v) os << u << ' ' << v << '\n';
}

Graph Graph::read_edge_list(std::istream& is) {
    long long n = -1, m = -1;
    if (!(is >> n >> m) || n < 0 || m < 0)
        throw std::invalid_argument("bad edge-list header");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(is >> u >> v)) throw std::invalid_argument("truncated edge list");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("bad edge " + std::to_string(u) + " " + std::to_string(v));
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
    return from_edges(static_cast<int>(n), edges);
}

Graph intersect(const Graph& a, const Graph& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("graph intersection requires equal vertex counts");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> kept;
    for (auto [u, v] : a.edges())
        if (b.has_edge(u, v)) kept.emplace_back(u, v);
    return Graph::from_edges(a.n(), kept);
}

} // namespace keynet
