#pragma once

#include "keynet/graph.hpp"

namespace keynet::conn {

// Per-graph structural summary at connectivity order k.
struct ConnectivityReport {
    int min_degree = 0;
    int kappa = 0;           // vertex connectivity
    int component_count = 0;
    bool k_connected = false; // kappa >= k
    bool f_event = false;     // min_degree >= k but kappa < k
};

// Smallest vertex degree; 0 for the empty graph.
int min_degree(const Graph& g);

// Number of connected components; 0 for the empty graph.
int component_count(const Graph& g);

// True iff the graph has exactly one component (single vertex included).
bool is_connected(const Graph& g);

// Vertex connectivity kappa. Conventions: complete graph on n vertices has
// kappa = n - 1, a disconnected graph has kappa = 0, and graphs with fewer
// than two vertices have kappa = 0. Computed with unit-capacity vertex-split
// max-flow anchored at a minimum-degree vertex: flows from it to every
// non-neighbor plus flows between non-adjacent pairs of its neighbors.
int node_connectivity(const Graph& g);

// kappa >= k without always paying for the exact value: false is
// short-circuited via min_degree < k, true is established by running every
// required flow with capacity capped at k (never guessed early).
// k <= 0 is trivially true.
bool is_k_connected(const Graph& g, int k);

// Exhaustive reference: try all vertex subsets in increasing size until one
// disconnects the rest. Only for n <= 10 (throws beyond).
int node_connectivity_bruteforce(const Graph& g);

// Full report at order k. f_event is true iff min_degree >= k and kappa < k,
// i.e. the degree condition alone would have declared the graph k-connected
// but an actual cut smaller than k exists.
ConnectivityReport analyze(const Graph& g, int k);

} // namespace keynet::conn
