#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "keynet/connectivity.hpp"
#include "keynet/experiment.hpp"

using namespace keynet;
using namespace keynet::expt;

namespace {

bool rows_identical(const SweepRow& a, const SweepRow& b) {
    auto eq = [](double x, double y) {
        return (std::isnan(x) && std::isnan(y)) || x == y;
    };
    return a.axis == b.axis && eq(a.value, b.value) && a.params.n == b.params.n &&
           a.params.K == b.params.K && a.params.P == b.params.P &&
           a.params.q == b.params.q && eq(a.params.p, b.params.p) && a.k == b.k &&
           a.trials == b.trials && eq(a.t, b.t) && eq(a.alpha, b.alpha) &&
           eq(a.p_kconn, b.p_kconn) && eq(a.p_mindeg, b.p_mindeg) &&
           eq(a.f_rate, b.f_rate) && eq(a.wilson_hw, b.wilson_hw) &&
           a.status == b.status && a.error == b.error;
}

} // namespace

TEST_CASE("tiny network with known connectivity probability") {
    // n=3, K=1, P=2, q=1, p=1: each ring is a single key out of two, and an
    // edge needs equal keys. The graph is connected iff all three rings
    // agree: 2 of the 8 equally likely key assignments, so P = 1/4.
    ModelParams mp{3, 1, 2, 1, 1.0};
    RunOptions opt;
    opt.trials = 4000;
    opt.seed = 12345;
    SweepRow row = run_point(mp, 1, opt);
    double tol = 4.0 * std::sqrt(0.25 * 0.75 / 4000.0);
    CHECK(std::fabs(row.p_kconn - 0.25) < tol);
    CHECK(row.status == RowStatus::ok);
    CHECK(row.t == 0.5);
}

TEST_CASE("runs are deterministic and independent of worker count") {
    ModelParams mp{60, 8, 120, 2, 0.7};
    RunOptions a;
    a.trials = 40;
    a.seed = 777;
    a.workers = 1;
    std::vector<TrialRecord> recs_a;
    SweepRow ra = run_point(mp, 2, a, &recs_a);

    RunOptions b = a;
    b.workers = 7;
    std::vector<TrialRecord> recs_b;
    SweepRow rb = run_point(mp, 2, b, &recs_b);

    REQUIRE(rows_identical(ra, rb));
    REQUIRE(recs_a.size() == recs_b.size());
    for (std::size_t i = 0; i < recs_a.size(); ++i) {
        REQUIRE(recs_a[i].trial == static_cast<int>(i));
        REQUIRE(recs_a[i].kappa == recs_b[i].kappa);
        REQUIRE(recs_a[i].min_degree == recs_b[i].min_degree);
        REQUIRE(recs_a[i].edge_count == recs_b[i].edge_count);
    }

    // same options a third time: bit-identical again
    std::vector<TrialRecord> recs_c;
    SweepRow rc = run_point(mp, 2, a, &recs_c);
    REQUIRE(rows_identical(ra, rc));

    // a different master seed gives different trial outcomes
    RunOptions d = a;
    d.seed = 778;
    std::vector<TrialRecord> recs_d;
    run_point(mp, 2, d, &recs_d);
    bool any_diff = false;
    for (std::size_t i = 0; i < recs_a.size(); ++i)
        any_diff |= recs_a[i].edge_count != recs_d[i].edge_count;
    CHECK(any_diff);
}

TEST_CASE("accounting identity between degree and connectivity counts") {
    ModelParams mp{40, 6, 80, 2, 0.55};
    RunOptions opt;
    opt.trials = 200;
    opt.seed = 31;
    std::vector<TrialRecord> recs;
    SweepRow row = run_point(mp, 2, opt, &recs);

    int cm = 0, ck = 0, cf = 0;
    for (const auto& r : recs) {
        if (r.min_degree >= 2) ++cm;
        if (r.k_connected) ++ck;
        if (r.f_event) ++cf;
        // per-trial internal consistency
        REQUIRE(r.k_connected == (r.kappa >= 2));
        REQUIRE(r.f_event == (r.min_degree >= 2 && r.kappa < 2));
    }
    REQUIRE(cm == ck + cf);                       // exact integer identity
    REQUIRE(row.p_mindeg - row.p_kconn == row.f_rate); // exact double identity
    REQUIRE(row.p_mindeg == static_cast<double>(cm) / 200);
    REQUIRE(row.p_kconn == static_cast<double>(ck) / 200);
}

TEST_CASE("wilson half width frozen values") {
    CHECK(wilson_half_width(50, 100) == doctest::Approx(0.09616846963400436).epsilon(1e-15));
    CHECK(wilson_half_width(0, 100) == doctest::Approx(0.018496749103492836).epsilon(1e-15));
    CHECK(wilson_half_width(300, 300) == doctest::Approx(0.006321485612273017).epsilon(1e-15));
    CHECK(std::isnan(wilson_half_width(1, 0)));
}

TEST_CASE("csv output matches the schema byte for byte") {
    SweepRow row;
    row.axis = "K";
    row.value = 40.0;
    row.params = ModelParams{200, 40, 1000, 2, 0.25};
    row.k = 2;
    row.trials = 100;
    row.t = 0.125;
    row.alpha = -1.5;
    row.p_kconn = 1.0 / 3.0;
    row.p_mindeg = 0.5;
    row.f_rate = 0.16666666666666669;
    row.wilson_hw = 0.09616846963400436;
    row.status = RowStatus::ok;

    SweepRow infeas;
    infeas.axis = "alpha";
    infeas.value = 6.0;
    infeas.params = ModelParams{200, 40, 1000, 2, 1.5};
    infeas.k = 2;
    infeas.trials = 0;
    infeas.t = std::nan("");
    infeas.alpha = std::nan("");
    infeas.p_kconn = std::nan("");
    infeas.p_mindeg = std::nan("");
    infeas.f_rate = std::nan("");
    infeas.wilson_hw = std::nan("");
    infeas.status = RowStatus::infeasible;

    SweepRow err = infeas;
    err.axis = "P";
    err.value = 0.0;
    err.status = RowStatus::error;
    err.error = "P must be >= K, got\nP=0, K=40";

    std::ostringstream out;
    write_csv({row, infeas, err}, out);
    CHECK(out.str() ==
          "axis,value,n,K,P,q,p,k,trials,t,alpha,p_kconn,p_mindeg,f_rate,wilson_hw,status\n"
          "K,40,200,40,1000,2,0.25,2,100,0.125,-1.5,0.33333333333333331,0.5,"
          "0.16666666666666669,0.096168469634004355,ok\n"
          "alpha,6,200,40,1000,2,1.5,2,0,nan,nan,nan,nan,nan,nan,infeasible\n"
          "P,0,200,40,1000,2,1.5,2,0,nan,nan,nan,nan,nan,nan,error:P must be >= K; got;P=0; K=40\n");
}

TEST_CASE("csv floats round-trip at 17 significant digits") {
    for (double x : {1.0 / 3.0, 0.1, 1.2345678901234567e-300, 123456789012345.67,
                     5e-324, 0.09616846963400436}) {
        SweepRow row;
        row.value = x;
        row.params = ModelParams{3, 1, 2, 1, x > 1.0 ? 0.5 : x};
        row.t = x;
        row.alpha = -x;
        row.p_kconn = 0.0;
        row.p_mindeg = 0.0;
        row.f_rate = 0.0;
        row.wilson_hw = 0.0;
        std::ostringstream out;
        write_csv({row}, out);
        std::string text = out.str();
        std::string data = text.substr(text.find('\n') + 1);
        // split on commas, re-parse the value (field 1) and t (field 9)
        std::vector<std::string> fields;
        std::stringstream ss(data);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        REQUIRE(fields.size() == 16);
        CHECK(std::strtod(fields[1].c_str(), nullptr) == x);
        CHECK(std::strtod(fields[9].c_str(), nullptr) == x);
        CHECK(std::strtod(fields[10].c_str(), nullptr) == -x);
    }
}

TEST_CASE("per-trial table format") {
    std::vector<TrialRecord> recs{{0, 3, 2, true, false, 17},
                                  {1, 1, 0, false, false, 4},
                                  {2, 2, 1, false, true, 9}};
    std::ostringstream out;
    write_trials_csv(recs, out);
    CHECK(out.str() ==
          "trial,min_degree,kappa,k_connected,f_event,edge_count\n"
          "0,3,2,1,0,17\n"
          "1,1,0,0,0,4\n"
          "2,2,1,0,1,9\n");
}

TEST_CASE("sweep isolates invalid rows while the rest proceed") {
    ModelParams base{30, 5, 30, 2, 0.8};
    RunOptions opt;
    opt.trials = 8;
    opt.seed = 4;
    auto rows = sweep("K", {5.0, 40.0, 10.0, 7.5}, base, 2, opt);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].status == RowStatus::ok);
    CHECK(rows[1].status == RowStatus::error); // K > P
    CHECK(rows[1].error.find("P must be >= K") != std::string::npos);
    CHECK(rows[2].status == RowStatus::ok);
    CHECK(rows[3].status == RowStatus::error); // non-integer K
    CHECK(rows[0].params.K == 5);
    CHECK(rows[2].params.K == 10);
    CHECK(rows[0].trials == 8);
    CHECK(rows[1].trials == 0);
    // distinct rows use distinct seed streams: identical parameter points in
    // different rows still see different randomness
    auto twin = sweep("K", {5.0, 5.0}, base, 2, opt);
    std::vector<TrialRecord> recs0, recs1;
    RunOptions single = opt;
    run_point(ModelParams{30, 5, 30, 2, 0.8}, 2, single, &recs0, "K", 5.0, 0);
    run_point(ModelParams{30, 5, 30, 2, 0.8}, 2, single, &recs1, "K", 5.0, 1);
    bool differ = false;
    for (std::size_t i = 0; i < recs0.size(); ++i)
        differ |= recs0[i].edge_count != recs1[i].edge_count;
    CHECK(differ);
    CHECK(twin[0].status == RowStatus::ok);
    CHECK(twin[1].status == RowStatus::ok);
}

TEST_CASE("alpha sweep solves p per row and marks unreachable targets") {
    ModelParams base{2000, 40, 20000, 2, 0.0};
    RunOptions opt;
    opt.trials = 2;
    opt.seed = 9;
    auto rows = alpha_sweep({-6.0, 0.0}, base, 2, opt);
    REQUIRE(rows.size() == 2);

    CHECK(rows[0].status == RowStatus::ok);
    CHECK(rows[0].params.p == 0.62584749832276587);
    CHECK(rows[0].trials == 2);
    CHECK(rows[0].value == -6.0);
    // achieved alpha lands on the target up to the double rounding of p
    CHECK(std::fabs(rows[0].alpha - (-6.0)) < 1e-9);

    CHECK(rows[1].status == RowStatus::infeasible);
    CHECK(rows[1].trials == 0);
    CHECK(rows[1].params.p > 1.0); // reports the unreachable requirement
    CHECK(std::isnan(rows[1].p_kconn));
    CHECK(rows[1].t == doctest::Approx(0.0048145847222306835).epsilon(1e-15));
}

TEST_CASE("axis and trial-count validation") {
    ModelParams mp{30, 5, 30, 2, 0.8};
    RunOptions opt;
    opt.trials = 0;
    CHECK_THROWS_AS(run_point(mp, 2, opt), std::invalid_argument);
    opt.trials = 1;
    CHECK_THROWS_AS(run_point(mp, 0, opt), std::invalid_argument);
    ModelParams tiny{2, 1, 2, 1, 0.5};
    CHECK_THROWS_AS(run_point(tiny, 1, opt), std::invalid_argument);
    CHECK_THROWS_AS(sweep("Q", {1.0}, mp, 2, opt), std::invalid_argument);
}
