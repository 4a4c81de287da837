#pragma once

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "keynet/params.hpp"

namespace keynet::prob {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Arithmetic backend. Every probability entry point exists in both: `exact`
// computes with arbitrary-precision rationals (doubles entering a computation
// are converted to their exact dyadic value), `floating` works in log-space
// doubles. The two must agree to ~1e-10 relative on the supported domain.
enum class Arith { exact, floating };

// --- exact integer / rational kernels ------------------------------------

// C(n, k) as an exact big integer; 0 when k < 0 or k > n.
BigInt binomial(long long n, long long k);

// ln C(n, k); -inf when the coefficient is 0. Computed as a sum of logs over
// min(k, n-k) terms, which keeps the absolute log error small enough that
// exp() agrees with the exact value to ~1e-12 relative for the supported
// parameter ranges (K up to a few hundred, P up to ~1e6).
double ln_choose(long long n, long long k);

// --- key-overlap distribution --------------------------------------------

// P[two key rings of size K from a pool of P share exactly u keys]
// (hypergeometric). Support is max(0, 2K - P) <= u <= K; inside the valid
// argument range 0 <= u <= K the pmf is 0 off-support.
// Pre: 1 <= K <= P, 0 <= u <= K.
BigRat overlap_pmf_exact(int K, int P, int u);
double overlap_pmf(int K, int P, int u);

// P[at least q shared keys] = sum_{u=q}^{K} overlap_pmf.
// Pre: 1 <= q <= K <= P.
BigRat key_share_prob_exact(int K, int P, int q);
double key_share_prob(int K, int P, int q);

// Edge probability of the composite graph: t = p * s. The float version is
// literally p * key_share_prob(K, P, q) so that the product law holds
// bit-for-bit. Pre: params.validate() passes.
BigRat edge_prob_exact(const ModelParams& mp);
double edge_prob(const ModelParams& mp);

// Upper bound s <= C(K, q)^2 / C(P, q). May exceed 1, in which case it is
// returned as-is (vacuous bound); callers decide whether to flag it.
// Pre: 1 <= q <= K <= P.
BigRat bloznelis_bound_exact(int K, int P, int q);
double bloznelis_bound(int K, int P, int q);

// First-order approximation s ~ (1/q!) * (K^2 / P)^q, valid when K^2/P is
// small. Provided for reporting; no accuracy guarantee is asserted.
double approx_key_share_prob(int K, int P, int q);

// --- scaling law -----------------------------------------------------------

// alpha = n*t - ln n - (k-1)*ln ln n with t = edge_prob(mp).
// Pre: mp valid, k >= 1, n >= 3.
ScalingPoint alpha_of(const ModelParams& mp, int k);

// Critical edge probability (ln n + (k-1)*ln ln n + alpha_offset) / n.
// Pre: k >= 1, n >= 3.
double critical_edge_prob(int n, int k, double alpha_offset = 0.0);

// --- critical parameter solvers --------------------------------------------
//
// Each solver fixes all but one model parameter and finds the value at which
// the edge probability t = p * s(K, P, q) crosses the critical scaling
// threshold thr = critical_edge_prob(n, k, alpha_offset). Infeasibility (no
// value in the allowed range reaches the threshold) is reported as
// std::nullopt, not as an error. In exact mode the comparison s >= thr / p is
// carried out in rational arithmetic with thr and p taken at their exact
// dyadic values, so results are reproducible bit-for-bit.

// Minimal K in [q, P] with p * s(K, P, q) >= thr. s is nondecreasing in K.
// Pre: 1 <= q <= P, 0 <= p <= 1, k >= 1, n >= 3.
std::optional<int> critical_key_ring_size(int n, int P, int q, double p, int k,
                                          Arith mode = Arith::exact,
                                          double alpha_offset = 0.0);

// Maximal P in [K, pool_ceiling] with p * s(K, P, q) >= thr. s is
// nonincreasing in P, so the solution (when the threshold is met at P = K at
// all) is the last P before s drops below the threshold.
// Pre: 1 <= q <= K <= pool_ceiling, 0 <= p <= 1, k >= 1, n >= 3.
std::optional<int> critical_pool_size(int n, int K, int q, double p, int k,
                                      int pool_ceiling,
                                      Arith mode = Arith::exact,
                                      double alpha_offset = 0.0);

// Minimal p in [0, 1] with p * s >= thr, i.e. p* = thr / s; std::nullopt when
// thr / s > 1. thr <= 0 yields p* = 0.
// Pre: 1 <= q <= K <= P, k >= 1, n >= 3.
std::optional<double> critical_channel_prob(int n, int K, int P, int q, int k,
                                            Arith mode = Arith::exact,
                                            double alpha_offset = 0.0);

} // namespace keynet::prob
