#include "keynet/graph_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace keynet::model {

namespace {

// Floyd's sampling: K distinct values from {0, ..., P-1}, one bounded draw
// per element regardless of K/P ratio.
std::vector<std::uint32_t> floyd_subset(rng::SplitMix64& gen, std::uint32_t P,
                                        std::uint32_t K) {
    std::vector<std::uint32_t> out;
    out.reserve(K);
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(K * 2);
    for (std::uint32_t j = P - K; j < P; ++j) {
        auto t = static_cast<std::uint32_t>(gen.next_below(j + 1));
        if (seen.insert(t).second) {
            out.push_back(t);
        } else {
            seen.insert(j);
            out.push_back(j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::vector<std::uint32_t>> sample_key_rings(const ModelParams& mp,
                                                         rng::Seed seed) {
    mp.validate();
    std::vector<std::vector<std::uint32_t>> rings(static_cast<std::size_t>(mp.n));
    for (int i = 0; i < mp.n; ++i) {
        rng::SplitMix64 gen(seed.ring_key(static_cast<std::uint64_t>(i)));
        rings[static_cast<std::size_t>(i)] =
            floyd_subset(gen, static_cast<std::uint32_t>(mp.P),
                         static_cast<std::uint32_t>(mp.K));
    }
    return rings;
}

Graph build_q_intersection_graph(const std::vector<std::vector<std::uint32_t>>& rings,
                                 int P, int q) {
    if (P < 1) throw std::invalid_argument("P must be >= 1");
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    auto n = rings.size();
    if (n > (std::size_t{1} << 32))
        throw std::invalid_argument("too many nodes");

    // Inverted index key -> nodes holding it, via counting sort.
    std::vector<std::size_t> offset(static_cast<std::size_t>(P) + 1, 0);
    for (const auto& ring : rings)
        for (std::uint32_t key : ring) {
            if (key >= static_cast<std::uint32_t>(P))
                throw std::invalid_argument("key id out of range");
            ++offset[key + 1];
        }
    for (std::size_t k = 1; k <= static_cast<std::size_t>(P); ++k)
        offset[k] += offset[k - 1];
    std::vector<std::uint32_t> holder(offset[static_cast<std::size_t>(P)]);
    {
        std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t key : rings[i])
                holder[cursor[key]++] = static_cast<std::uint32_t>(i);
    }

    // Every co-occurrence contributes one pair code; pairs seen at least q
    // times are edges. Nodes are filled in increasing order, so a < b holds.
    std::vector<std::uint64_t> codes;
    for (std::size_t k = 0; k < static_cast<std::size_t>(P); ++k) {
        std::size_t lo = offset[k], hi = offset[k + 1];
        for (std::size_t x = lo; x < hi; ++x)
            for (std::size_t y = x + 1; y < hi; ++y)
                codes.push_back((static_cast<std::uint64_t>(holder[x]) << 32) | holder[y]);
    }
    std::sort(codes.begin(), codes.end());

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::size_t i = 0;
    while (i < codes.size()) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) ++j;
        if (j - i >= static_cast<std::size_t>(q))
            edges.emplace_back(static_cast<std::uint32_t>(codes[i] >> 32),
                               static_cast<std::uint32_t>(codes[i] & 0xFFFFFFFFu));
        i = j;
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

bool channel_on(rng::Seed seed, std::uint32_t i, std::uint32_t j, double p) {
    rng::SplitMix64 gen(seed.pair_key(i, j));
    return gen.next_unit() < p;
}

Graph sample_er_graph(int n, double p, rng::Seed seed) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(n); ++i)
        for (std::uint32_t j = i + 1; j < static_cast<std::uint32_t>(n); ++j)
            if (channel_on(seed, i, j, p)) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph generate_network(const ModelParams& mp, rng::Seed seed) {
    auto rings = sample_key_rings(mp, seed);
    Graph overlap = build_q_intersection_graph(rings, mp.P, mp.q);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> kept;
    for (auto [u, v] : overlap.edges())
        if (channel_on(seed, u, v, mp.p)) kept.emplace_back(u, v);
    return Graph::from_edges(mp.n, kept);
}

} // namespace keynet::model
