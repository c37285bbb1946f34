#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clusterft/analytics.hpp"
#include "clusterft/concat.hpp"

using namespace clusterft;

namespace {
ConcatConfig cfg_for(double pg, uint64_t trials, int jobs = 2) {
    ConcatConfig cfg;
    cfg.params = NoiseParams::standard(pg);
    cfg.trials = trials;
    cfg.seed = 99;
    cfg.jobs = jobs;
    return cfg;
}
}  // namespace

TEST_CASE("homogeneous errors vanish at zero noise") {
    auto stats = estimate_homogeneous(cfg_for(0.0, 200));
    CHECK(stats.accepted == 200);
    CHECK(stats.attempts == 200);
    CHECK(stats.eps_x.events == 0);
    CHECK(stats.eps_z.events == 0);
    CHECK_FALSE(stats.eps_x.ok);  // zero counts flagged as insufficient, not zero
}

TEST_CASE("homogeneous error rates approach the leading ratios at small p_g") {
    const double pg = 0.004;
    auto stats = estimate_homogeneous(cfg_for(pg, 6000));
    REQUIRE(stats.ok);
    const double unit = pg / 15.0;
    CHECK(stats.eps_x.value / unit == doctest::Approx(1.0).epsilon(0.45));
    CHECK(stats.eps_y.value / unit == doctest::Approx(1.0).epsilon(0.45));
    CHECK(stats.eps_z.value / unit == doctest::Approx(2.0).epsilon(0.35));
    CHECK(stats.corr_rate_max <= stats.indep_rate);
}

TEST_CASE("pq1 tracks the leading order at moderate p_g") {
    const double pg = 0.005;
    auto pq1 = estimate_pq1(cfg_for(pg, 40000));
    REQUIRE(pq1.ok);
    const double leading = kBlockPairCount * pq_level0(NoiseParams::standard(pg)) *
                           pq_level0(NoiseParams::standard(pg));
    CHECK(pq1.value > leading / 1.7);
    CHECK(pq1.value < leading * 1.7);
}

TEST_CASE("pauli frame estimator runs and stays below pq1") {
    auto cfg = cfg_for(0.01, 400);
    auto pf = estimate_pauli1(cfg);
    CHECK(pf.ok);
    CHECK(pf.accepted == 400);
    // frame errors are strongly suppressed; with this tiny budget we only
    // require that they are rare
    const double total = pf.p_x.value + pf.p_y.value + pf.p_z.value;
    CHECK(total < 0.05);
}

TEST_CASE("lift at zero unit error is silent") {
    LevelUnitModel unit;
    unit.level = 1;
    unit.p_q = 0.0;
    auto lift = lift_level(unit, 500, 3);
    CHECK(lift.acceptance.value == doctest::Approx(1.0));
    CHECK(lift.pq_next.events == 0);
    CHECK(lift.next.p_q == 0.0);
}

TEST_CASE("lift reproduces the one-step recursion at small p_q") {
    LevelUnitModel unit;
    unit.level = 1;
    unit.p_q = 0.01;
    auto lift = lift_level(unit, 30000, 5, 2);
    REQUIRE(lift.pq_next.ok);
    const double leading = kBlockPairCount * unit.p_q * unit.p_q;
    CHECK(lift.pq_next.value > leading / 1.6);
    CHECK(lift.pq_next.value < leading * 1.6);
    CHECK(lift.acceptance.value < 1.0);
    CHECK(lift.next.level == 2);
}

TEST_CASE("acceptance ordering: bootstrap above level-2 construction") {
    auto a1 = acceptance_level1(CodeStateKind::Zero, cfg_for(0.01, 20000));
    auto a2 = acceptance_level2(DiagramKind::Hexa, cfg_for(0.01, 1500));
    CHECK(a1.value > a2.value);
    CHECK(a1.value > 0.5);
    auto a1_quiet = acceptance_level1(CodeStateKind::Zero, cfg_for(0.0, 500));
    CHECK(a1_quiet.value == doctest::Approx(1.0));
}

TEST_CASE("statistical failure surfaces as an exception") {
    // with p_meas = 1 every check flips, nothing is ever accepted
    ConcatConfig cfg;
    cfg.params.p_meas = 1.0;
    cfg.trials = 1;
    cfg.seed = 1;
    cfg.jobs = 1;
    cfg.max_attempts_per_trial = 50;
    CHECK_THROWS_AS(estimate_homogeneous(cfg), StatisticalFailure);
}
