// Copyright 2026 The secprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "secprec/errors.hpp"
#include "secprec/experiments.hpp"
#include "secprec/records.hpp"

using namespace secprec;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.dims_list = {SystemDims(16, 16)};
    cfg.model = CorrelationModel::toeplitz_exponential(0.5);
    cfg.rho_db_grid = {10.0};
    cfg.trials = 8;
    cfg.base_seed = 3;
    return cfg;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const TrialRecord& aggregate(const std::vector<TrialRecord>& records)
{
    return records.back();
}

}  // namespace

TEST_CASE("db conversion and seed mixing")
{
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(trial_seed(7, 0) == 7);
    CHECK(trial_seed(7, 3) == (7u ^ 3u));
}

TEST_CASE("xi policy parsing")
{
    CHECK(XiPolicy::parse("large-system-optimal").kind == XiPolicyKind::LargeSystemOptimal);
    CHECK(XiPolicy::parse("per-realization").kind == XiPolicyKind::PerRealizationOptimal);
    const auto fixed = XiPolicy::parse("fixed:0.25");
    CHECK(fixed.kind == XiPolicyKind::Fixed);
    CHECK(fixed.value == 0.25);
    CHECK(XiPolicy::parse(fixed.name()).value == 0.25);
    CHECK_THROWS_AS(XiPolicy::parse("fixed:-1"), InvalidArgument);
    CHECK_THROWS_AS(XiPolicy::parse("bogus"), InvalidArgument);
}

TEST_CASE("config validation")
{
    auto cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = small_config();
    cfg.rho_db_grid.clear();
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = small_config();
    cfg.dims_list.clear();
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("parallel_for visits every index once")
{
    std::vector<int> hits(1000, 0);
    parallel_for(1000, 4, [&](int i) { hits[i] += 1; });
    for (int h : hits)
        REQUIRE(h == 1);
}

TEST_CASE("sweep is deterministic and thread-count independent")
{
    auto cfg = small_config();
    cfg.trials = 1;
    CHECK(ergodic_rate_sweep(cfg) == ergodic_rate_sweep(cfg));

    cfg.trials = 6;
    cfg.threads = 1;
    const auto serial = ergodic_rate_sweep(cfg);
    cfg.threads = 3;
    CHECK(ergodic_rate_sweep(cfg) == serial);
}

TEST_CASE("aggregate row is the arithmetic mean of the trials")
{
    auto cfg = small_config();
    cfg.trials = 25;
    const auto records = ergodic_rate_sweep(cfg);
    REQUIRE(records.size() == 26);
    double sum = 0.0;
    for (int t = 0; t < 25; ++t) {
        CHECK(records[t].experiment == "fig1");
        CHECK(records[t].per_antenna_sum_rate >= 0.0);
        sum += records[t].per_antenna_sum_rate;
    }
    CHECK(aggregate(records).experiment == "fig1-mean");
    CHECK(std::abs(aggregate(records).per_antenna_sum_rate - sum / 25.0) < 1e-12);
    CHECK(aggregate(records).flags.rfind("trials=25;", 0) == 0);
}

TEST_CASE("monte carlo mean approaches the deterministic equivalent")
{
    auto cfg = small_config();
    cfg.dims_list = {SystemDims(64, 64)};
    cfg.trials = 100;
    cfg.threads = 4;
    const auto agg = aggregate(ergodic_rate_sweep(cfg));
    CHECK(agg.deterministic_rate > 0.0);
    CHECK(std::abs(agg.per_user_mean_rate - agg.deterministic_rate) / agg.deterministic_rate < 0.05);
}

TEST_CASE("standard error scales like one over root trials")
{
    auto se_of = [](int trials) {
        auto cfg = small_config();
        cfg.trials = trials;
        cfg.threads = 4;
        const std::string flags = aggregate(ergodic_rate_sweep(cfg)).flags;
        const auto start = flags.find("se=") + 3;
        return std::stod(flags.substr(start, flags.find(';', start) - start));
    };
    const double ratio = se_of(100) / se_of(400);
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("sweep modes and error annotation")
{
    auto cfg = small_config();
    cfg.xi_policy = XiPolicy::parse("fixed:0.1");
    const auto fixed = ergodic_rate_sweep(cfg);
    CHECK(fixed.front().xi_used == 0.1);

    cfg.ergodic_gamma = true;
    const auto ergodic = ergodic_rate_sweep(cfg);
    CHECK(ergodic.front().flags == "ergodic_gamma");
    CHECK(ergodic.front().per_antenna_sum_rate != fixed.front().per_antenna_sum_rate);

    cfg = small_config();
    cfg.xi_policy = XiPolicy::parse("per-realization");
    cfg.trials = 3;
    const auto per = ergodic_rate_sweep(cfg);
    CHECK(per[0].xi_used != per[1].xi_used);

    cfg = small_config();
    cfg.solver.tolerance = 1e-300;
    std::vector<TrialRecord> failed;
    CHECK_NOTHROW(failed = ergodic_rate_sweep(cfg));
    CHECK(failed.front().flags == "setup_failed");
    CHECK(aggregate(failed).flags.find("excluded=8") != std::string::npos);
    CHECK(aggregate(failed).flags.find("converge") != std::string::npos);
}

TEST_CASE("relative loss curve")
{
    const auto points = relative_loss_curve(0.8, {0.0, 10.0, 20.0}, {0.0, 0.1, 0.2, 0.3, 0.35, 0.5, 0.7});
    REQUIRE(points.size() == 21);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        CAPTURE(p.nu);
        CAPTURE(p.rho_db);
        CHECK_FALSE(p.undefined);
        if (p.nu == 0.0)
            CHECK(std::abs(p.loss) < 1e-8);
        if (p.nu <= 0.35)
            CHECK(p.loss < 0.10);
        if (i % 7 != 0)
            WARN(p.loss >= points[i - 1].loss);
    }
    // The 10% level is crossed before nu = 0.4 at low SNR, but not at 20 dB.
    const auto edge = relative_loss_curve(0.8, {0.0, 20.0}, {0.4});
    CHECK(edge[0].loss > 0.10);
    CHECK(edge[1].loss < 0.10);

    const auto rows = loss_records(0.8, points);
    CHECK(rows.size() == points.size());
    CHECK(rows[3].experiment == "fig2");
    CHECK(rows[3].gap == points[3].loss);
}

TEST_CASE("ccdf of the xi gap")
{
    CcdfSettings s;
    s.m_list = {8, 16};
    s.trials = 60;
    s.threads = 4;
    const auto curves = ccdf_xi_gap(s);
    REQUIRE(curves.size() == 2);
    for (const auto& c : curves) {
        CHECK(c.k == c.m);
        CHECK(c.points.front().first == 0.0);
        CHECK(c.points.front().second == 1.0);
        for (std::size_t i = 1; i < c.points.size(); ++i)
            CHECK(c.points[i].second <= c.points[i - 1].second);
        for (double g : c.gaps) {
            CHECK(g >= 0.0);
            CHECK(g < 1.0);
        }
        CHECK(c.mean_gap <= 0.03);
        CHECK(c.records.back().experiment == "fig3-mean");
        CHECK(c.records.back().gap == c.mean_gap);
    }
    const std::string csv = ccdf_to_csv(curves);
    CHECK(csv.rfind("M,gap,ccdf\n", 0) == 0);
    CHECK(ccdf_xi_gap(s)[1].records == curves[1].records);
}

TEST_CASE("mean gap does not grow with M")
{
    CcdfSettings s;
    s.trials = 300;
    s.threads = 4;
    const auto curves = ccdf_xi_gap(s);
    REQUIRE(curves.size() == 3);
    CHECK(curves[1].mean_gap <= curves[0].mean_gap);
    CHECK(curves[2].mean_gap <= curves[1].mean_gap);
}

TEST_CASE("record serialization")
{
    const auto dir = std::filesystem::temp_directory_path() / "secprec_test_records";
    std::filesystem::remove_all(dir);

    write_records({}, (dir / "empty.csv").string());
    CHECK(slurp(dir / "empty.csv") == std::string(kRecordHeader) + "\n");

    auto cfg = small_config();
    cfg.trials = 4;
    const auto records = ergodic_rate_sweep(cfg);
    write_records(records, (dir / "a.csv").string());
    CHECK(read_records((dir / "a.csv").string()) == records);
    CHECK(records_from_csv(records_to_csv(records)) == records);

    write_records(ergodic_rate_sweep(cfg), (dir / "b.csv").string());
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    TrialRecord odd;
    odd.experiment = "x";
    odd.gap = 0.1;
    odd.per_antenna_sum_rate = 1.0 / 3.0;
    odd.seed = 0xffffffffffffffffull;
    CHECK(records_from_csv(records_to_csv({odd})) == std::vector<TrialRecord>{odd});

    CHECK_THROWS_AS(read_records((dir / "missing.csv").string()), Error);
    std::filesystem::remove_all(dir);
}
