#include "keynet/connectivity.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <vector>

namespace keynet::conn {

namespace {

// Unit-capacity max-flow on the vertex-split network: each vertex v becomes
// v_in (2v) -> v_out (2v+1) with capacity 1, each undirected edge {u, v}
// becomes u_out -> v_in and v_out -> u_in with capacity 1. The structure is
// built once per graph; every (s, t) query restores capacities afterwards, so
// repeated queries stay cheap.
class VertexFlow {
  public:
    explicit VertexFlow(const Graph& g) {
        int n = g.n();
        out_.resize(static_cast<std::size_t>(2 * n));
        for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(n); ++v)
            add_arc(2 * v, 2 * v + 1, 1);
        for (auto [u, v] : g.edges()) {
            add_arc(2 * u + 1, 2 * v, 1);
            add_arc(2 * v + 1, 2 * u, 1);
        }
        seen_.assign(out_.size(), 0);
        parent_.assign(out_.size(), -1);
        queue_.reserve(out_.size());
    }

    // min(local vertex connectivity kappa(s, t), limit) for distinct,
    // non-adjacent s and t.
    int max_flow(std::uint32_t s, std::uint32_t t, int limit) {
        std::uint32_t src = 2 * s + 1, dst = 2 * t;
        int flow = 0;
        while (flow < limit && augment(src, dst)) ++flow;
        for (int a : touched_) { ++cap_[static_cast<std::size_t>(a)]; --cap_[static_cast<std::size_t>(a) ^ 1]; }
        touched_.clear();
        return flow;
    }

  private:
    void add_arc(std::uint32_t from, std::uint32_t to, int cap) {
        out_[from].push_back(static_cast<int>(to_.size()));
        to_.push_back(to);
        cap_.push_back(cap);
        out_[to].push_back(static_cast<int>(to_.size()));
        to_.push_back(from);
        cap_.push_back(0);
    }

    bool augment(std::uint32_t src, std::uint32_t dst) {
        ++epoch_;
        queue_.clear();
        queue_.push_back(src);
        seen_[src] = epoch_;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            std::uint32_t u = queue_[head];
            for (int a : out_[u]) {
                if (cap_[static_cast<std::size_t>(a)] <= 0) continue;
                std::uint32_t v = to_[static_cast<std::size_t>(a)];
                if (seen_[v] == epoch_) continue;
                seen_[v] = epoch_;
                parent_[v] = a;
                if (v == dst) {
                    for (std::uint32_t w = dst; w != src;) {
                        int pa = parent_[w];
                        --cap_[static_cast<std::size_t>(pa)];
                        ++cap_[static_cast<std::size_t>(pa) ^ 1];
                        touched_.push_back(pa);
                        w = to_[static_cast<std::size_t>(pa) ^ 1];
                    }
                    return true;
                }
                queue_.push_back(v);
            }
        }
        return false;
    }

    std::vector<std::vector<int>> out_;
    std::vector<std::uint32_t> to_;
    std::vector<int> cap_;
    std::vector<std::uint64_t> seen_;
    std::vector<int> parent_;
    std::vector<std::uint32_t> queue_;
    std::vector<int> touched_;
    std::uint64_t epoch_ = 0;
};

// min(kappa, cap) for cap >= 0. Anchoring vertex s is a minimum-degree
// vertex; correctness of the pair set follows from analysing a minimum cut
// S*: if s is outside S*, some component of G - S* avoids s and any of its
// vertices is a non-neighbor target; if s is inside S*, s has non-adjacent
// neighbors in two different components of G - S*.
int connectivity_capped(const Graph& g, int cap) {
    int n = g.n();
    if (n <= 1 || cap <= 0) return 0;
    if (g.is_complete()) return std::min(n - 1, cap);
    if (!is_connected(g)) return 0;

    std::uint32_t s = 0;
    for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(n); ++v)
        if (g.degree(v) < g.degree(s)) s = v;
    int best = std::min(g.degree(s), cap);
    if (best <= 1) return best; // connected, so kappa >= 1

    VertexFlow flow(g);
    for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(n); ++t) {
        if (t == s || g.has_edge(s, t)) continue;
        best = std::min(best, flow.max_flow(s, t, best));
        if (best == 1) return 1;
    }
    const auto& nb = g.neighbors(s);
    for (std::size_t x = 0; x < nb.size(); ++x)
        for (std::size_t y = x + 1; y < nb.size(); ++y) {
            if (g.has_edge(nb[x], nb[y])) continue;
            best = std::min(best, flow.max_flow(nb[x], nb[y], best));
            if (best == 1) return 1;
        }
    return best;
}

} // namespace

int min_degree(const Graph& g) {
    int n = g.n();
    if (n == 0) return 0;
    int d = std::numeric_limits<int>::max();
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(n); ++v)
        d = std::min(d, g.degree(v));
    return d;
}

int component_count(const Graph& g) {
    int n = g.n();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> stack;
    int comps = 0;
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(n); ++v) {
        if (seen[v]) continue;
        ++comps;
        seen[v] = 1;
        stack.push_back(v);
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t w : g.neighbors(u))
                if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
        }
    }
    return comps;
}

bool is_connected(const Graph& g) { return component_count(g) == 1; }

int node_connectivity(const Graph& g) {
    return connectivity_capped(g, std::max(0, g.n() - 1));
}

bool is_k_connected(const Graph& g, int k) {
    if (k <= 0) return true;
    if (g.n() == 0 || min_degree(g) < k) return false;
    return connectivity_capped(g, k) >= k;
}

int node_connectivity_bruteforce(const Graph& g) {
    int n = g.n();
    if (n > 10) throw std::invalid_argument("brute-force connectivity is limited to n <= 10");
    if (n <= 1) return 0;

    std::vector<std::uint32_t> adj_mask(static_cast<std::size_t>(n), 0);
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(n); ++v)
        for (std::uint32_t w : g.neighbors(v)) adj_mask[v] |= (1u << w);

    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    auto connected_within = [&](std::uint32_t rem) {
        std::uint32_t start = rem & (~rem + 1); // lowest set bit
        std::uint32_t visited = start, frontier = start;
        while (frontier) {
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f) {
                int v = std::countr_zero(f);
                f &= f - 1;
                next |= adj_mask[static_cast<std::size_t>(v)] & rem & ~visited;
            }
            visited |= next;
            frontier = next;
        }
        return visited == rem;
    };

    for (int m = 0; m <= n - 2; ++m)
        for (std::uint32_t cut = 0; cut <= full; ++cut) {
            if (std::popcount(cut) != m || (cut & ~full)) continue;
            if (!connected_within(full & ~cut)) return m;
        }
    return n - 1;
}

ConnectivityReport analyze(const Graph& g, int k) {
    ConnectivityReport r;
    r.min_degree = min_degree(g);
    r.component_count = component_count(g);
    r.kappa = node_connectivity(g);
    r.k_connected = r.kappa >= k;
    r.f_event = (r.min_degree >= k) && (r.kappa < k);
    return r;
}

} // namespace keynet::conn
