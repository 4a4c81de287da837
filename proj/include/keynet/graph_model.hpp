#pragma once

#include <cstdint>
#include <vector>

#include "keynet/graph.hpp"
#include "keynet/params.hpp"
#include "keynet/rng.hpp"

namespace keynet::model {

// Draw each node's key ring: a uniform random K-subset of {0, ..., P-1},
// returned sorted. Node i consumes only its own derived stream, so rings are
// independent of evaluation order. Pre: mp.validate() passes.
std::vector<std::vector<std::uint32_t>> sample_key_rings(const ModelParams& mp,
                                                         rng::Seed seed);

// Key-overlap graph: nodes i < j are adjacent iff their rings share at least
// q keys. Rings must contain distinct ids in [0, P). Complexity is
// O(sum over keys of d_key^2) via an inverted key -> nodes index.
Graph build_q_intersection_graph(const std::vector<std::vector<std::uint32_t>>& rings,
                                 int P, int q);

// Channel indicator for the pair (i, j), i < j: on with probability p,
// independent across pairs, a pure function of (seed, i, j). This is what
// makes thinning an existing edge set equivalent to sampling all pairs.
bool channel_on(rng::Seed seed, std::uint32_t i, std::uint32_t j, double p);

// Independent-channel graph on n vertices: every pair through channel_on.
Graph sample_er_graph(int n, double p, rng::Seed seed);

// Composite graph: key-overlap graph intersected with the channel graph.
// Implemented by thinning the overlap graph's edges with channel_on, which is
// bit-identical to intersect(build_q_intersection_graph(...),
// sample_er_graph(...)) on the same seed. Pre: mp.validate() passes.
Graph generate_network(const ModelParams& mp, rng::Seed seed);

} // namespace keynet::model
