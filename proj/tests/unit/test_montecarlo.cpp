#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "rsma/baselines.hpp"
#include "rsma/montecarlo.hpp"
#include "rsma/rate_region.hpp"

using namespace rsma;
using fixtures::rel;

namespace {

SweepSpec small_sweep() {
    SweepSpec spec;
    spec.axis = SweepAxis::p_max_dbm;
    spec.values = {-10.0, 0.0, 10.0};
    spec.trials = 12;
    spec.seed = 5;
    spec.threads = 3;
    return spec;
}

DropModel four_users() {
    DropModel m;
    m.k = 4;
    return m;
}

}  // namespace

TEST_CASE("scheme and axis names") {
    for (auto s : all_schemes()) CHECK(parse_scheme(to_string(s)) == s);
    CHECK(parse_scheme("rsma_up(ss)") == Scheme::rsma_up_ss);
    CHECK(parse_scheme("noma") == Scheme::noma);
    CHECK_THROWS_AS((void)parse_scheme("OFDMA"), std::invalid_argument);
    for (auto a : {SweepAxis::p_max_dbm, SweepAxis::bandwidth_hz, SweepAxis::d2_weight, SweepAxis::k_users}) {
        CHECK(parse_axis(to_string(a)) == a);
    }
    CHECK_THROWS_AS((void)parse_axis("distance"), std::invalid_argument);
}

TEST_CASE("scheme sum-rate dispatch") {
    const auto s = fixtures::two_user();
    CHECK(rel(scheme_sum_rate(s, Scheme::rsma), fixtures::kRmax) < 1e-12);
    CHECK(rel(scheme_sum_rate(s, Scheme::noma), noma_solve(s).tau) < 1e-12);
    CHECK(rel(scheme_sum_rate(s, Scheme::fdma), fdma_solve(s).tau) < 1e-12);
    CHECK(rel(scheme_sum_rate(s, Scheme::tdma), tdma_solve(s).tau) < 1e-12);
    CHECK(rel(scheme_sum_rate(s, Scheme::rsma_up_sw), fixtures::kRmax) < 1e-5);
    CHECK_THROWS((void)scheme_sum_rate(fixtures::random_drop(3, 1), Scheme::rsma_up_sm));
}

TEST_CASE("sweep validation") {
    const auto model = four_users();
    auto spec = small_sweep();
    CHECK_NOTHROW(validate(spec, model));
    spec.values = {};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec.values = {1.0, 0.0};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec = small_sweep();
    spec.trials = 0;
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec = small_sweep();
    spec.axis = SweepAxis::d2_weight;
    spec.values = {0.5, 1.0};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec.axis = SweepAxis::k_users;
    spec.values = {2.0, 3.0};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec.schemes = {Scheme::rsma, Scheme::tdma};
    CHECK_NOTHROW(validate(spec, model));
    spec.values = {2.5};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec = small_sweep();
    spec.axis = SweepAxis::bandwidth_hz;
    spec.values = {0.0, 1e6};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
    spec = small_sweep();
    spec.schemes = {};
    CHECK_THROWS_AS(validate(spec, model), std::invalid_argument);
}

TEST_CASE("sweep scenarios share drops across axis values") {
    auto spec = small_sweep();
    const auto model = four_users();
    const auto a = sweep_scenario(spec, model, -10.0, 3);
    const auto b = sweep_scenario(spec, model, 10.0, 3);
    for (std::size_t k = 0; k < 4; ++k) CHECK(a.user(k).h == b.user(k).h);
    CHECK(rel(b.user(0).p_max, dbm_to_watt(10.0)) < 1e-15);
    CHECK(sweep_scenario(spec, model, 0.0, 4).user(0).h != a.user(0).h);

    spec.axis = SweepAxis::d2_weight;
    spec.values = {0.7};
    const auto w = sweep_scenario(spec, model, 0.7, 0);
    CHECK(rel(w.user(1).d, 0.7) < 1e-15);
    CHECK(rel(w.user(0).d, 0.1) < 1e-14);

    spec.axis = SweepAxis::bandwidth_hz;
    CHECK(sweep_scenario(spec, model, 5e6, 0).bandwidth_hz() == 5e6);

    spec.axis = SweepAxis::k_users;
    CHECK(sweep_scenario(spec, model, 6.0, 0).size() == 6);
}

TEST_CASE("single user: every non-paired scheme agrees") {
    SweepSpec spec = small_sweep();
    spec.schemes = {Scheme::rsma, Scheme::noma, Scheme::fdma, Scheme::tdma};
    DropModel m;
    m.k = 1;
    const auto rows = run_sweep(spec, m);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 0; i < rows.size(); i += 4) {
        for (std::size_t j = 1; j < 4; ++j) CHECK(rel(rows[i + j].mean, rows[i].mean) < 1e-9);
    }
}

TEST_CASE("sweep rows: layout, statistics and ordering") {
    const auto spec = small_sweep();
    const auto rows = run_sweep(spec, four_users());
    REQUIRE(rows.size() == spec.values.size() * spec.schemes.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].value == spec.values[i / spec.schemes.size()]);
        CHECK(rows[i].scheme == spec.schemes[i % spec.schemes.size()]);
        CHECK(rows[i].trials == spec.trials);
        CHECK(rows[i].std >= 0.0);
    }
    // Per-trial dominance implies dominance of the means.
    for (std::size_t i = 0; i < rows.size(); i += spec.schemes.size()) {
        for (std::size_t j = 1; j < spec.schemes.size(); ++j) CHECK(rows[i].mean >= rows[i + j].mean * (1 - 1e-12));
    }
    // Means grow with power.
    CHECK(rows[0].mean < rows[spec.schemes.size()].mean);

    // Statistics recomputed by hand for one value.
    const auto samples = sample_trials({Scheme::tdma}, spec.trials, 1, spec.pairing_eps,
                                       [&](std::size_t t) { return sweep_scenario(spec, four_users(), 0.0, t); });
    double mean = 0.0;
    for (double x : samples[0]) mean += x;
    mean /= static_cast<double>(spec.trials);
    double ss = 0.0;
    for (double x : samples[0]) ss += (x - mean) * (x - mean);
    const auto& tdma_row = rows[spec.schemes.size() + 6];
    REQUIRE(tdma_row.scheme == Scheme::tdma);
    CHECK(rel(tdma_row.mean, mean) < 1e-14);
    CHECK(rel(tdma_row.std, std::sqrt(ss / (spec.trials - 1.0))) < 1e-12);
}

TEST_CASE("sweep is reproducible and thread-count independent") {
    auto spec = small_sweep();
    const auto a = run_sweep(spec, four_users());
    const auto b = run_sweep(spec, four_users());
    spec.threads = 1;
    const auto c = run_sweep(spec, four_users());
    CHECK(a == b);
    CHECK(a == c);
    spec.seed = 6;
    CHECK_FALSE(run_sweep(spec, four_users()) == a);
}

TEST_CASE("one trial gives zero spread") {
    auto spec = small_sweep();
    spec.trials = 1;
    for (const auto& r : run_sweep(spec, four_users())) CHECK(r.std == 0.0);
}

TEST_CASE("fixed gains") {
    SweepSpec spec;
    spec.axis = SweepAxis::d2_weight;
    spec.values = {0.3};
    spec.trials = 3;
    spec.schemes = {Scheme::rsma};
    DropModel m;
    m.fixed_gains = std::vector<double>{fixtures::kH1, fixtures::kH2};
    m.defaults.p_max_w = fixtures::p_max();
    const auto rows = run_sweep(spec, m);
    REQUIRE(rows.size() == 1);
    CHECK(rel(rows[0].mean, rsma_optimal_sum_rate(fixtures::two_user(0.7, 0.3)).tau) < 1e-12);
    CHECK(rows[0].std <= 1e-15 * rows[0].mean);
    spec.axis = SweepAxis::k_users;
    spec.values = {2.0};
    CHECK_THROWS_AS(validate(spec, m), std::invalid_argument);
}

TEST_CASE("empirical CDF") {
    CdfSpec spec;
    spec.trials = 40;
    spec.seed = 9;
    spec.threads = 4;
    const auto series = run_cdf(spec, four_users());
    REQUIRE(series.size() == all_schemes().size());
    for (const auto& c : series) {
        REQUIRE(c.samples.size() == 40);
        CHECK(std::is_sorted(c.samples.begin(), c.samples.end()));
        CHECK(c.ordinates.front() == doctest::Approx(0.5 / 40));
        CHECK(c.ordinates.back() == doctest::Approx(39.5 / 40));
    }
    CHECK(run_cdf(spec, four_users()) == series);
    spec.trials = 9;
    CHECK_THROWS_AS((void)run_cdf(spec, four_users()), std::invalid_argument);
    spec.trials = 10;
    DropModel odd;
    odd.k = 3;
    CHECK_THROWS_AS((void)run_cdf(spec, odd), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    SUBCASE("sweep") {
        std::ostringstream empty;
        write_sweep_csv(empty, {});
        CHECK(empty.str() == "value,scheme,mean_bps,std_bps,trials\n");

        std::vector<ResultRow> rows{{1.0, Scheme::rsma_up_sm, 1.0 / 3.0, 0.1, 7}};
        std::ostringstream one;
        write_sweep_csv(one, rows);
        const std::string text = one.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 2);

        auto spec = small_sweep();
        spec.trials = 3;
        const auto full = run_sweep(spec, four_users());
        std::ostringstream os;
        write_sweep_csv(os, full);
        std::istringstream is(os.str());
        CHECK(parse_sweep_csv(is) == full);

        std::istringstream bad("nope\n");
        CHECK_THROWS_AS((void)parse_sweep_csv(bad), std::invalid_argument);
    }
    SUBCASE("cdf") {
        CdfSpec spec;
        spec.trials = 10;
        spec.schemes = {Scheme::rsma, Scheme::fdma};
        const auto series = run_cdf(spec, four_users());
        std::ostringstream os;
        write_cdf_csv(os, series);
        CHECK(os.str().rfind("scheme,index,sum_rate_bps,cdf\n", 0) == 0);
        std::istringstream is(os.str());
        CHECK(parse_cdf_csv(is) == series);
    }
    SUBCASE("file output") {
        const std::string path = "test_montecarlo_out.csv";
        std::vector<ResultRow> rows{{2.0, Scheme::tdma, 5e6, 0.0, 1}};
        emit_csv(rows, path);
        std::ifstream in(path);
        CHECK(parse_sweep_csv(in) == rows);
        std::remove(path.c_str());
        CHECK_THROWS_AS(emit_csv(rows, "/nonexistent-dir/x.csv"), std::runtime_error);
    }
    CHECK(format_full(0.1) == "1.0000000000000001e-01");
}
