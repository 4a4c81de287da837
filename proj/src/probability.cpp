#include "keynet/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace keynet::prob {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_pool(int K, int P, int q) {
    if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
    if (K < q)
        throw std::invalid_argument("K must be >= q, got K=" + std::to_string(K) +
                                    " q=" + std::to_string(q));
    if (P < K)
        throw std::invalid_argument("P must be >= K, got P=" + std::to_string(P) +
                                    " K=" + std::to_string(K));
}

void check_scaling(int n, int k) {
    if (n < 3) throw std::invalid_argument("n must be >= 3, got " + std::to_string(n));
    if (k < 1) throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
}

// Exact dyadic value of a finite double.
BigRat exact_of(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("expected a finite value");
    return BigRat(x);
}

// Compensated (Kahan) accumulator; keeps long sums accurate to a few ulp of
// the result, independent of term count.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace

BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return BigInt(0);
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i; // exact at every step: r is C(n-k+i, i) * i! / i! along the way
    }
    return r;
}

double ln_choose(long long n, long long k) {
    if (k < 0 || k > n) return kNegInf;
    long long m = std::min(k, n - k);
    KahanSum acc;
    for (long long i = 1; i <= m; ++i)
        acc.add(std::log(static_cast<double>(n - m + i)) - std::log(static_cast<double>(i)));
    return acc.sum;
}

BigRat overlap_pmf_exact(int K, int P, int u) {
    check_pool(K, P, 1);
    if (u < 0 || u > K)
        throw std::invalid_argument("u must be in [0,K], got u=" + std::to_string(u));
    BigInt num = binomial(K, u) * binomial(P - K, K - u);
    return BigRat(num, binomial(P, K));
}

double overlap_pmf(int K, int P, int u) {
    check_pool(K, P, 1);
    if (u < 0 || u > K)
        throw std::invalid_argument("u must be in [0,K], got u=" + std::to_string(u));
    if (u < 2 * K - P) return 0.0; // off-support: more than K - u fresh keys needed
    double lg = ln_choose(K, u) + ln_choose(P - K, K - u) - ln_choose(P, K);
    return std::exp(lg);
}

BigRat key_share_prob_exact(int K, int P, int q) {
    check_pool(K, P, q);
    BigInt den = binomial(P, K);
    // Tail has K-q+1 terms, complement has q; evaluate whichever is shorter.
    if (q <= K - q + 1) {
        BigInt below = 0;
        for (int u = 0; u < q; ++u) below += binomial(K, u) * binomial(P - K, K - u);
        return BigRat(den - below, den);
    }
    BigInt num = 0;
    for (int u = q; u <= K; ++u) num += binomial(K, u) * binomial(P - K, K - u);
    return BigRat(num, den);
}

double key_share_prob(int K, int P, int q) {
    check_pool(K, P, q);
    // Direct tail sum of positive terms: relative error stays near machine
    // precision even when the tail is tiny (the complement form would cancel).
    int lo = std::max(q, std::max(0, 2 * K - P));
    double lnden = ln_choose(P, K);
    std::vector<double> logs;
    logs.reserve(K - lo + 1);
    double peak = kNegInf;
    for (int u = lo; u <= K; ++u) {
        double lg = ln_choose(K, u) + ln_choose(P - K, K - u) - lnden;
        logs.push_back(lg);
        peak = std::max(peak, lg);
    }
    if (peak == kNegInf) return 0.0;
    KahanSum acc;
    for (double lg : logs) acc.add(std::exp(lg - peak));
    return std::min(1.0, std::exp(peak) * acc.sum);
}

BigRat edge_prob_exact(const ModelParams& mp) {
    mp.validate();
    return exact_of(mp.p) * key_share_prob_exact(mp.K, mp.P, mp.q);
}

double edge_prob(const ModelParams& mp) {
    mp.validate();
    return mp.p * key_share_prob(mp.K, mp.P, mp.q);
}

BigRat bloznelis_bound_exact(int K, int P, int q) {
    check_pool(K, P, q);
    BigInt c = binomial(K, q);
    return BigRat(c * c, binomial(P, q));
}

double bloznelis_bound(int K, int P, int q) {
    check_pool(K, P, q);
    return std::exp(2.0 * ln_choose(K, q) - ln_choose(P, q));
}

double approx_key_share_prob(int K, int P, int q) {
    check_pool(K, P, q);
    double lg = q * (2.0 * std::log(static_cast<double>(K)) -
                     std::log(static_cast<double>(P))) -
                std::lgamma(static_cast<double>(q) + 1.0);
    return std::exp(lg);
}

ScalingPoint alpha_of(const ModelParams& mp, int k) {
    mp.validate();
    check_scaling(mp.n, k);
    double t = edge_prob(mp);
    double ln_n = std::log(static_cast<double>(mp.n));
    double alpha = mp.n * t - ln_n - (k - 1) * std::log(ln_n);
    return ScalingPoint{t, alpha, k, mp.n};
}

double critical_edge_prob(int n, int k, double alpha_offset) {
    check_scaling(n, k);
    double ln_n = std::log(static_cast<double>(n));
    return (ln_n + (k - 1) * std::log(ln_n) + alpha_offset) / n;
}

namespace {

// Shared monotone-predicate machinery for the K and P solvers. pred must be
// monotone in its argument; gallop + binary search keeps predicate arguments
// small, which matters in exact mode where cost grows with the argument.

template <typename Pred>
int smallest_true(int lo, int hi, Pred pred) {
    // Pre: pred(lo) is false, pred(hi) is true, pred nondecreasing.
    int last_false = lo;
    int first_true = hi;
    for (long long step = 1;; step *= 2) {
        long long cand = std::min<long long>(hi, last_false + step);
        if (cand >= hi) break;
        if (pred(static_cast<int>(cand)))
            { first_true = static_cast<int>(cand); break; }
        last_false = static_cast<int>(cand);
    }
    int a = last_false + 1, b = first_true;
    while (a < b) {
        int mid = a + (b - a) / 2;
        if (pred(mid)) b = mid; else a = mid + 1;
    }
    return a;
}

template <typename Pred>
int largest_true(int lo, int hi, Pred pred) {
    // Pre: pred(lo) is true, pred(hi) is false, pred nonincreasing.
    int last_true = lo;
    int first_false = hi;
    for (long long step = 1;; step *= 2) {
        long long cand = std::min<long long>(hi, last_true + step);
        if (cand >= hi) break;
        if (!pred(static_cast<int>(cand)))
            { first_false = static_cast<int>(cand); break; }
        last_true = static_cast<int>(cand);
    }
    int a = last_true, b = first_false - 1;
    while (a < b) {
        int mid = a + (b - a + 1) / 2;
        if (pred(mid)) a = mid; else b = mid - 1;
    }
    return a;
}

void check_channel(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must be in [0,1], got " + std::to_string(p));
}

} // namespace

std::optional<int> critical_key_ring_size(int n, int P, int q, double p, int k,
                                          Arith mode, double alpha_offset) {
    if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
    if (P < q)
        throw std::invalid_argument("P must be >= q, got P=" + std::to_string(P) +
                                    " q=" + std::to_string(q));
    check_channel(p);
    double thr = critical_edge_prob(n, k, alpha_offset);
    if (thr <= 0.0) return q; // every K qualifies; K = q is minimal
    if (p == 0.0) return std::nullopt;

    BigRat target_exact = exact_of(thr) / exact_of(p);
    double target_float = thr / p;
    auto pred = [&](int K) {
        if (mode == Arith::exact)
            return key_share_prob_exact(K, P, q) >= target_exact;
        return key_share_prob(K, P, q) >= target_float;
    };
    if (pred(q)) return q;
    if (!pred(P)) return std::nullopt;
    return smallest_true(q, P, pred);
}

std::optional<int> critical_pool_size(int n, int K, int q, double p, int k,
                                      int pool_ceiling, Arith mode,
                                      double alpha_offset) {
    if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
    if (K < q)
        throw std::invalid_argument("K must be >= q, got K=" + std::to_string(K) +
                                    " q=" + std::to_string(q));
    if (pool_ceiling < K)
        throw std::invalid_argument("pool_ceiling must be >= K, got " +
                                    std::to_string(pool_ceiling));
    check_channel(p);
    double thr = critical_edge_prob(n, k, alpha_offset);
    if (thr <= 0.0) return pool_ceiling; // every P qualifies; take the largest
    if (p == 0.0) return std::nullopt;

    BigRat target_exact = exact_of(thr) / exact_of(p);
    double target_float = thr / p;
    auto pred = [&](int P) {
        if (mode == Arith::exact)
            return key_share_prob_exact(K, P, q) >= target_exact;
        return key_share_prob(K, P, q) >= target_float;
    };
    if (!pred(K)) return std::nullopt;
    if (pred(pool_ceiling)) return pool_ceiling;
    return largest_true(K, pool_ceiling, pred);
}

std::optional<double> critical_channel_prob(int n, int K, int P, int q, int k,
                                            Arith mode, double alpha_offset) {
    check_pool(K, P, q);
    double thr = critical_edge_prob(n, k, alpha_offset);
    if (thr <= 0.0) return 0.0;

    if (mode == Arith::floating) {
        double s = key_share_prob(K, P, q);
        if (s <= 0.0) return std::nullopt;
        double p = thr / s;
        if (p > 1.0) return std::nullopt;
        return p;
    }
    BigRat ratio = exact_of(thr) / key_share_prob_exact(K, P, q);
    if (ratio > 1) return std::nullopt;
    // Return the smallest double whose exact dyadic value meets the
    // threshold, so the result survives exact re-evaluation and its
    // predecessor does not.
    double p = static_cast<double>(ratio);
    while (exact_of(p) < ratio) p = std::nextafter(p, 2.0);
    for (;;) {
        double below = std::nextafter(p, -1.0);
        if (below < 0.0 || exact_of(below) < ratio) break;
        p = below;
    }
    return p;
}

} // namespace keynet::prob
