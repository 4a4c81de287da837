// Command-line front end: exact/float link probabilities, critical-parameter
// solvers, and seeded Monte Carlo experiments over the composite random
// graph. Exit codes: 0 success (infeasible results included), 1 invalid
// parameters, 2 usage errors, 3 I/O errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "keynet/connectivity.hpp"
#include "keynet/experiment.hpp"
#include "keynet/graph_model.hpp"
#include "keynet/params.hpp"
#include "keynet/probability.hpp"
#include "keynet/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
    int n = 0, K = 0, P = 0, q = 1, k = 1;
    double p = 0.0;
    std::string mode = "exact";
};

keynet::prob::Arith parse_mode(const std::string& mode) {
    if (mode == "exact") return keynet::prob::Arith::exact;
    if (mode == "float") return keynet::prob::Arith::floating;
    throw CLI::ValidationError("--mode", "must be 'exact' or 'float'");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(const keynet::prob::BigRat& r) {
    std::ostringstream ss;
    ss << r << " = " << fmt(static_cast<double>(r));
    return ss.str();
}

int cmd_prob(const CommonFlags& f) {
    keynet::ModelParams mp{f.n, f.K, f.P, f.q, f.p};
    mp.validate();
    bool exact = parse_mode(f.mode) == keynet::prob::Arith::exact;
    // Compute everything before printing anything, so a validation failure
    // (thrown here) never leaves a partial report on stdout.
    double alpha = keynet::prob::alpha_of(mp, f.k).alpha;
    double approx = keynet::prob::approx_key_share_prob(mp.K, mp.P, mp.q);
    std::string s_line, t_line, bound_line;
    double bound;
    if (exact) {
        s_line = fmt(keynet::prob::key_share_prob_exact(mp.K, mp.P, mp.q));
        t_line = fmt(keynet::prob::edge_prob_exact(mp));
        keynet::prob::BigRat b = keynet::prob::bloznelis_bound_exact(mp.K, mp.P, mp.q);
        bound = static_cast<double>(b);
        bound_line = fmt(b);
    } else {
        s_line = fmt(keynet::prob::key_share_prob(mp.K, mp.P, mp.q));
        t_line = fmt(keynet::prob::edge_prob(mp));
        bound = keynet::prob::bloznelis_bound(mp.K, mp.P, mp.q);
        bound_line = fmt(bound);
    }
    std::cout << "s = " << s_line << '\n';
    std::cout << "t = " << t_line << '\n';
    std::cout << "bloznelis_bound = " << bound_line << '\n';
    if (bound > 1.0) std::cout << "note: bloznelis bound exceeds 1 (vacuous)\n";
    std::cout << "approx = " << fmt(approx) << '\n';
    std::cout << "alpha = " << fmt(alpha) << '\n';
    return kExitOk;
}

int cmd_critical(const CommonFlags& f, bool has_K, bool has_P, bool has_p,
                 std::optional<int> pool_ceiling, double alpha_offset) {
    auto mode = parse_mode(f.mode);
    int unknowns = (has_K ? 0 : 1) + (has_P ? 0 : 1) + (has_p ? 0 : 1);
    if (unknowns != 1) {
        std::cerr << "critical: exactly one of -K, -P, -p must be omitted (the "
                     "parameter to solve for); got " << unknowns << " unknowns\n";
        return kExitUsage;
    }
    // Solve before printing anything, so a validation failure never leaves a
    // partial report on stdout.
    double thr = keynet::prob::critical_edge_prob(f.n, f.k, alpha_offset);
    std::string answer;
    if (!has_K) {
        auto r = keynet::prob::critical_key_ring_size(f.n, f.P, f.q, f.p, f.k,
                                                      mode, alpha_offset);
        answer = r ? "K* = " + std::to_string(*r)
                   : std::string("infeasible: no key-ring size in [q, P] meets the threshold");
    } else if (!has_P) {
        if (!pool_ceiling) {
            std::cerr << "critical: solving for -P requires --pool-ceiling\n";
            return kExitUsage;
        }
        auto r = keynet::prob::critical_pool_size(f.n, f.K, f.q, f.p, f.k,
                                                  *pool_ceiling, mode, alpha_offset);
        answer = r ? "P* = " + std::to_string(*r)
                   : std::string("infeasible: no pool size in [K, ceiling] meets the threshold");
    } else {
        auto r = keynet::prob::critical_channel_prob(f.n, f.K, f.P, f.q, f.k,
                                                     mode, alpha_offset);
        answer = r ? "p* = " + fmt(*r)
                   : std::string("infeasible: required channel probability exceeds 1");
    }
    std::cout << "threshold = " << fmt(thr) << '\n' << answer << '\n';
    return kExitOk;
}

// Stream selection for --out; writes go to the file when given, else stdout.
class OutFile {
  public:
    explicit OutFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::ios_base::failure("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        if (file_.is_open()) {
            file_.flush();
            if (!file_) throw std::ios_base::failure("error writing output file");
        }
    }

  private:
    std::ofstream file_;
};

int cmd_simulate(const CommonFlags& f, const keynet::expt::RunOptions& opt,
                 const std::string& out_path, bool dump_trials,
                 const std::string& dump_graph_path) {
    keynet::ModelParams mp{f.n, f.K, f.P, f.q, f.p};
    std::vector<keynet::expt::TrialRecord> records;
    keynet::expt::SweepRow row = keynet::expt::run_point(
        mp, f.k, opt, dump_trials ? &records : nullptr);

    OutFile out(out_path);
    keynet::expt::write_csv({row}, out.stream());
    if (dump_trials) {
        out.stream() << '\n';
        keynet::expt::write_trials_csv(records, out.stream());
    }
    out.finish();

    if (!dump_graph_path.empty()) {
        keynet::rng::Seed master{opt.seed};
        keynet::rng::Seed trial_seed{master.trial_key(0, 0)};
        keynet::Graph g = keynet::model::generate_network(mp, trial_seed);
        std::ofstream gf(dump_graph_path, std::ios::binary);
        if (!gf) throw std::ios_base::failure("cannot open graph file: " + dump_graph_path);
        g.write_edge_list(gf);
        gf.flush();
        if (!gf) throw std::ios_base::failure("error writing graph file");
    }
    return kExitOk;
}

int cmd_sweep(const CommonFlags& f, bool has_p, const keynet::expt::RunOptions& opt,
              const std::string& axis, const std::vector<double>& values,
              const std::vector<double>& alphas, const std::string& out_path) {
    bool axis_mode = !axis.empty() || !values.empty();
    bool alpha_mode = !alphas.empty();
    if (axis_mode == alpha_mode) {
        std::cerr << "sweep: provide either --axis with --values, or --alpha-list\n";
        return kExitUsage;
    }
    if (axis_mode && (axis.empty() || values.empty())) {
        std::cerr << "sweep: --axis and --values must be given together\n";
        return kExitUsage;
    }
    if (axis_mode && axis != "p" && !has_p) {
        std::cerr << "sweep: -p is required unless the axis is p or --alpha-list is used\n";
        return kExitUsage;
    }

    keynet::ModelParams base{f.n, f.K, f.P, f.q, f.p};
    std::vector<keynet::expt::SweepRow> rows;
    if (axis_mode)
        rows = keynet::expt::sweep(axis, values, base, f.k, opt);
    else
        rows = keynet::expt::alpha_sweep(alphas, base, f.k, opt, parse_mode(f.mode));

    OutFile out(out_path);
    keynet::expt::write_csv(rows, out.stream());
    out.finish();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"composite key-predistribution random graph toolkit"};
    app.require_subcommand(1);

    CommonFlags f;
    keynet::expt::RunOptions opt;
    std::string out_path, axis, dump_graph_path;
    std::vector<double> values, alphas;
    std::optional<int> pool_ceiling;
    double alpha_offset = 0.0;
    bool dump_trials = false;

    auto add_model_flags = [&](CLI::App* cmd, bool need_K, bool need_P, bool need_p) {
        cmd->add_option("-n,--nodes", f.n, "number of nodes")->required();
        auto* oK = cmd->add_option("-K,--ring", f.K, "key-ring size");
        auto* oP = cmd->add_option("-P,--pool", f.P, "key-pool size");
        auto* oq = cmd->add_option("-q,--overlap", f.q, "required shared keys");
        auto* op = cmd->add_option("-p,--channel", f.p, "channel on-probability");
        cmd->add_option("-k,--order", f.k, "connectivity order")->required();
        if (need_K) oK->required();
        if (need_P) oP->required();
        if (need_p) op->required();
        oq->required();
        return std::tuple{oK, oP, op};
    };
    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("-T,--trials", opt.trials, "Monte Carlo trials per point")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opt.seed, "master seed");
        cmd->add_option("--workers", opt.workers,
                        "worker threads (0 = hardware concurrency)");
        cmd->add_option("--out", out_path, "write CSV to this file instead of stdout");
    };

    CLI::App* prob = app.add_subcommand("prob", "exact and asymptotic link probabilities");
    add_model_flags(prob, true, true, true);
    prob->add_option("--mode", f.mode, "arithmetic backend: exact|float")
        ->check(CLI::IsMember({"exact", "float"}));

    CLI::App* critical = app.add_subcommand("critical", "solve one parameter to the connectivity threshold");
    auto [cK, cP, cp] = add_model_flags(critical, false, false, false);
    critical->add_option("--mode", f.mode, "arithmetic backend: exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    critical->add_option("--pool-ceiling", pool_ceiling, "upper limit when solving for P");
    critical->add_option("--alpha-offset", alpha_offset, "shift the threshold by this alpha");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo at a single parameter point");
    add_model_flags(simulate, true, true, true);
    add_run_flags(simulate);
    simulate->add_flag("--dump-trials", dump_trials, "append the per-trial table");
    simulate->add_option("--dump-graph", dump_graph_path, "write the first trial's edge list to this file");

    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo across a parameter axis");
    auto [sK, sP, sp] = add_model_flags(sweep, true, true, false);
    (void)sK; (void)sP;
    add_run_flags(sweep);
    sweep->add_option("--axis", axis, "parameter to vary: K|P|p|n");
    sweep->add_option("--values", values, "comma-separated axis values")->delimiter(',');
    sweep->add_option("--alpha-list", alphas, "comma-separated alpha targets (solves p per row)")->delimiter(',');
    sweep->add_option("--mode", f.mode, "arithmetic backend for alpha solving: exact|float")
        ->check(CLI::IsMember({"exact", "float"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (prob->parsed()) return cmd_prob(f);
        if (critical->parsed())
            return cmd_critical(f, cK->count() > 0, cP->count() > 0,
                                cp->count() > 0, pool_ceiling, alpha_offset);
        if (simulate->parsed())
            return cmd_simulate(f, opt, out_path, dump_trials, dump_graph_path);
        if (sweep->parsed())
            return cmd_sweep(f, sp->count() > 0, opt, axis, values, alphas, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}
