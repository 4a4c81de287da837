#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "keynet/params.hpp"
#include "keynet/probability.hpp"

namespace keynet::expt {

// Outcome of a single Monte Carlo trial.
struct TrialRecord {
    int trial = 0;
    int min_degree = 0;
    int kappa = 0;
    bool k_connected = false;
    bool f_event = false;
    std::size_t edge_count = 0;
};

enum class RowStatus { ok, infeasible, error };

// One aggregated experiment row (a single parameter point).
struct SweepRow {
    std::string axis = "point"; // which parameter varies; "point" for single runs
    double value = 0.0;         // the varying parameter's value for this row
    ModelParams params;
    int k = 1;
    int trials = 0;
    double t = 0.0;             // model edge probability
    double alpha = 0.0;         // scaling-law position
    double p_kconn = 0.0;       // empirical P[kappa >= k]
    double p_mindeg = 0.0;      // empirical P[min_degree >= k]
    double f_rate = 0.0;        // p_mindeg - p_kconn (exact by construction)
    double wilson_hw = 0.0;     // 95% Wilson half-width on p_kconn
    RowStatus status = RowStatus::ok;
    std::string error;          // populated when status == error
};

struct RunOptions {
    int trials = 500;
    std::uint64_t seed = 0;
    int workers = 0; // 0 = hardware concurrency
};

// Run `trials` independent draws of the composite graph at mp, analyze each
// at order k, and aggregate. Trial i uses a sub-seed derived from
// (seed, row_index, i), so results are independent of worker count and of
// which rows ran before. If `records` is non-null the per-trial outcomes are
// appended in trial order. Pre: mp.validate() passes, mp.n >= 3, k >= 1.
SweepRow run_point(const ModelParams& mp, int k, const RunOptions& opt,
                   std::vector<TrialRecord>* records = nullptr,
                   const std::string& axis = "point", double value = 0.0,
                   std::uint64_t row_index = 0);

// One row per value, with base params and the named axis ("K", "P", "p", "n")
// replaced by the value. Integer axes require integral values. A row whose
// parameters fail validation becomes a status=error row; remaining rows still
// run. Row i derives its trial seeds from row_index = i.
std::vector<SweepRow> sweep(const std::string& axis,
                            const std::vector<double>& values,
                            const ModelParams& base, int k,
                            const RunOptions& opt);

// One row per target alpha: the channel probability is solved so that the
// scaling position hits the target, then the point is run. Targets whose
// required p exceeds 1 become status=infeasible rows (no trials; the p column
// reports the out-of-range requirement).
std::vector<SweepRow> alpha_sweep(const std::vector<double>& alphas,
                                  const ModelParams& base, int k,
                                  const RunOptions& opt,
                                  prob::Arith mode = prob::Arith::exact);

// 95% Wilson score half-width for successes/trials.
double wilson_half_width(int successes, int trials);

// CSV with the fixed header
// axis,value,n,K,P,q,p,k,trials,t,alpha,p_kconn,p_mindeg,f_rate,wilson_hw,status
// one row per SweepRow, floats rendered with %.17g, LF line endings.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);

// Per-trial table: trial,min_degree,kappa,k_connected,f_event,edge_count.
void write_trials_csv(const std::vector<TrialRecord>& records, std::ostream& os);

} // namespace keynet::expt
