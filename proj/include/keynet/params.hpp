#pragma once

#include <stdexcept>
#include <string>

namespace keynet {

// Parameters of the composite random graph: n nodes, each holding K distinct
// keys drawn uniformly from a pool of P, a secure link requiring at least q
// shared keys, and an independent channel that is on with probability p.
struct ModelParams {
    int n = 0;  // number of nodes
    int K = 0;  // key-ring size per node
    int P = 0;  // key pool size
    int q = 0;  // minimum shared keys for a secure link
    double p = 0.0;  // channel on-probability

    // Throws std::invalid_argument unless 1 <= q <= K <= P, n >= 1 and
    // p lies in [0, 1].
    void validate() const {
        if (n < 1) throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
        if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
        if (K < q)
            throw std::invalid_argument("K must be >= q, got K=" + std::to_string(K) +
                                        " q=" + std::to_string(q));
        if (P < K)
            throw std::invalid_argument("P must be >= K, got P=" + std::to_string(P) +
                                        " K=" + std::to_string(K));
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("p must be in [0,1], got " + std::to_string(p));
    }
};

// Position of a parameter set on the k-connectivity scaling law:
//     alpha = n * t - ln n - (k - 1) * ln ln n,
// where t is the edge probability. Requires n >= 3 so that ln ln n > 0.
struct ScalingPoint {
    double t = 0.0;      // edge probability
    double alpha = 0.0;  // deviation from the critical scaling
    int k = 0;           // connectivity order
    int n = 0;           // number of nodes
};

} // namespace keynet
