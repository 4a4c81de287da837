#include "keynet/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "keynet/connectivity.hpp"
#include "keynet/graph_model.hpp"
#include "keynet/rng.hpp"

namespace keynet::expt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int resolve_workers(int requested, int trials) {
    int w = requested;
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    return std::min(w, std::max(1, trials));
}

std::string sanitize(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return msg;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

double wilson_half_width(int successes, int trials) {
    if (trials <= 0) return kNan;
    constexpr double z = 1.959963984540054; // two-sided 95%
    double nT = trials;
    double phat = successes / nT;
    double z2 = z * z;
    return z * std::sqrt(phat * (1.0 - phat) / nT + z2 / (4.0 * nT * nT)) /
           (1.0 + z2 / nT);
}

SweepRow run_point(const ModelParams& mp, int k, const RunOptions& opt,
                   std::vector<TrialRecord>* records, const std::string& axis,
                   double value, std::uint64_t row_index) {
    mp.validate();
    if (k < 1) throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
    if (opt.trials < 1)
        throw std::invalid_argument("trials must be >= 1, got " + std::to_string(opt.trials));

    SweepRow row;
    row.axis = axis;
    row.value = value;
    row.params = mp;
    row.k = k;
    row.trials = opt.trials;
    ScalingPoint sp = prob::alpha_of(mp, k); // also enforces n >= 3
    row.t = sp.t;
    row.alpha = sp.alpha;

    const int T = opt.trials;
    std::vector<TrialRecord> recs(static_cast<std::size_t>(T));
    rng::Seed master{opt.seed};

    auto run_trial = [&](int i) {
        rng::Seed trial_seed{master.trial_key(row_index, static_cast<std::uint64_t>(i))};
        Graph g = model::generate_network(mp, trial_seed);
        conn::ConnectivityReport rep = conn::analyze(g, k);
        recs[static_cast<std::size_t>(i)] =
            TrialRecord{i, rep.min_degree, rep.kappa, rep.k_connected,
                        rep.f_event, g.edge_count()};
    };

    int workers = resolve_workers(opt.workers, T);
    if (workers == 1) {
        for (int i = 0; i < T; ++i) run_trial(i);
    } else {
        // Trials land in preassigned slots and aggregation below is a
        // sequential fold, so output is identical for every worker count.
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto body = [&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= T) return;
                try {
                    run_trial(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    int count_kconn = 0, count_mindeg = 0;
    for (const TrialRecord& r : recs) {
        if (r.k_connected) ++count_kconn;
        if (r.min_degree >= k) ++count_mindeg;
    }
    row.p_kconn = static_cast<double>(count_kconn) / T;
    row.p_mindeg = static_cast<double>(count_mindeg) / T;
    // Defined as the difference so the accounting identity holds exactly in
    // double arithmetic; the underlying counts satisfy it exactly as integers.
    row.f_rate = row.p_mindeg - row.p_kconn;
    row.wilson_hw = wilson_half_width(count_kconn, T);
    row.status = RowStatus::ok;

    if (records)
        records->insert(records->end(), recs.begin(), recs.end());
    return row;
}

std::vector<SweepRow> sweep(const std::string& axis,
                            const std::vector<double>& values,
                            const ModelParams& base, int k,
                            const RunOptions& opt) {
    if (axis != "K" && axis != "P" && axis != "p" && axis != "n")
        throw std::invalid_argument("axis must be one of K, P, p, n, got " + axis);

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        ModelParams mp = base;
        SweepRow row;
        row.axis = axis;
        row.value = v;
        row.k = k;
        try {
            if (axis == "p") {
                mp.p = v;
            } else {
                if (!(std::isfinite(v)) || v != std::floor(v) ||
                    v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
                    throw std::invalid_argument(axis + " values must be integers");
                int iv = static_cast<int>(v);
                if (axis == "K") mp.K = iv;
                else if (axis == "P") mp.P = iv;
                else mp.n = iv;
            }
            row = run_point(mp, k, opt, nullptr, axis, v, static_cast<std::uint64_t>(i));
        } catch (const std::exception& e) {
            row.params = mp;
            row.trials = 0;
            row.t = kNan;
            row.alpha = kNan;
            row.p_kconn = kNan;
            row.p_mindeg = kNan;
            row.f_rate = kNan;
            row.wilson_hw = kNan;
            row.status = RowStatus::error;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> alpha_sweep(const std::vector<double>& alphas,
                                  const ModelParams& base, int k,
                                  const RunOptions& opt, prob::Arith mode) {
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        double a = alphas[i];
        SweepRow row;
        row.axis = "alpha";
        row.value = a;
        row.k = k;
        try {
            std::optional<double> pstar = prob::critical_channel_prob(
                base.n, base.K, base.P, base.q, k, mode, a);
            if (!pstar) {
                // Report the out-of-range requirement instead of running.
                double thr = prob::critical_edge_prob(base.n, k, a);
                double s = prob::key_share_prob(base.K, base.P, base.q);
                ModelParams mp = base;
                mp.p = thr / s;
                row.params = mp;
                row.trials = 0;
                row.t = thr;
                row.alpha = a;
                row.p_kconn = kNan;
                row.p_mindeg = kNan;
                row.f_rate = kNan;
                row.wilson_hw = kNan;
                row.status = RowStatus::infeasible;
            } else {
                ModelParams mp = base;
                mp.p = *pstar;
                row = run_point(mp, k, opt, nullptr, "alpha", a,
                                static_cast<std::uint64_t>(i));
            }
        } catch (const std::exception& e) {
            row.params = base;
            row.trials = 0;
            row.t = kNan;
            row.alpha = kNan;
            row.p_kconn = kNan;
            row.p_mindeg = kNan;
            row.f_rate = kNan;
            row.wilson_hw = kNan;
            row.status = RowStatus::error;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "axis,value,n,K,P,q,p,k,trials,t,alpha,p_kconn,p_mindeg,f_rate,wilson_hw,status\n";
    for (const SweepRow& r : rows) {
        os << r.axis << ',' << fmt_double(r.value) << ',' << r.params.n << ','
           << r.params.K << ',' << r.params.P << ',' << r.params.q << ','
           << fmt_double(r.params.p) << ',' << r.k << ',' << r.trials << ','
           << fmt_double(r.t) << ',' << fmt_double(r.alpha) << ','
           << fmt_double(r.p_kconn) << ',' << fmt_double(r.p_mindeg) << ','
           << fmt_double(r.f_rate) << ',' << fmt_double(r.wilson_hw) << ',';
        switch (r.status) {
            case RowStatus::ok: os << "ok"; break;
            case RowStatus::infeasible: os << "infeasible"; break;
            case RowStatus::error: os << "error:" << sanitize(r.error); break;
        }
        os << '\n';
    }
}

void write_trials_csv(const std::vector<TrialRecord>& records, std::ostream& os) {
    os << "trial,min_degree,kappa,k_connected,f_event,edge_count\n";
    for (const TrialRecord& r : records)
        os << r.trial << ',' << r.min_degree << ',' << r.kappa << ','
           << (r.k_connected ? 1 : 0) << ',' << (r.f_event ? 1 : 0) << ','
           << r.edge_count << '\n';
}

} // namespace keynet::expt
