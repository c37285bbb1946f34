#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "clusterft/analytics.hpp"

using namespace clusterft;
using doctest::Approx;

TEST_CASE("standard noise parameters") {
    auto p = NoiseParams::standard(0.015);
    CHECK(p.p_ab(Pauli::X, Pauli::Z) == Approx(0.001));
    CHECK(p.p_meas == Approx(0.004));
    CHECK(p.p_prep == Approx(0.004));
    CHECK(NoiseParams::standard(0.15).p_two_sum() == Approx(0.15));
    auto zero = NoiseParams::standard(0.0);
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(NoiseParams::standard(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(NoiseParams::standard(1.5), std::invalid_argument);
}

TEST_CASE("leading homogeneous errors and the bare-CZ addition") {
    auto p = NoiseParams::standard(0.015);
    auto eps = homogeneous_leading(p);
    const double unit = 0.015 / 15.0;
    CHECK(eps.eps_x == Approx(unit));
    CHECK(eps.eps_y == Approx(unit));
    CHECK(eps.eps_z == Approx(2 * unit));
    auto primed = apply_bare_cz(eps, p);
    CHECK(primed.eps_x == Approx(5 * unit));
    CHECK(primed.eps_y == Approx(5 * unit));
    CHECK(primed.eps_z == Approx(8 * unit));
    // Z always gains at least as much as X (partner propagation)
    CHECK(primed.eps_z - eps.eps_z >= primed.eps_x - eps.eps_x);
    auto zero = apply_bare_cz(HomogeneousError{}, NoiseParams::standard(0));
    CHECK(zero.eps_z == 0.0);
}

TEST_CASE("level-0 measurement error ratio is 17/15") {
    for (double pg : {1e-4, 1e-3, 0.01, 0.03}) {
        CHECK(pq_level0(NoiseParams::standard(pg)) == Approx((17.0 / 15.0) * pg));
    }
    CHECK(pq_level0(NoiseParams::standard(0)) == 0.0);
    NoiseParams only_meas;
    only_meas.p_meas = 0.01;
    CHECK(pq_level0(only_meas) == Approx(0.01));
}

TEST_CASE("measurement-error recursion") {
    CHECK(pq_recursion(1.0 / 21.0, 0) == Approx(1.0 / 21.0));
    CHECK(pq_recursion(1.0 / 21.0, 3) == Approx(1.0 / 21.0));  // fixed point
    CHECK(pq_recursion(0.0, 5) == 0.0);
    const double pq0 = (17.0 / 15.0) * 0.01;
    CHECK(pq_recursion(pq0, 2) == Approx(1.53e-4).epsilon(0.01));
    // one-step law
    for (int l = 0; l < 5; ++l)
        CHECK(pq_recursion(pq0, l + 1) == Approx(21.0 * pq_recursion(pq0, l) * pq_recursion(pq0, l)));
}

TEST_CASE("thresholds") {
    CHECK(threshold_from_ratio(17.0 / 15.0) == Approx(0.0420).epsilon(0.01));
    CHECK(threshold_from_ratio(1.0) == Approx(1.0 / 21.0));
    CHECK(threshold_from_ratio(5.0 / 3.0) == Approx(0.0286).epsilon(0.01));
    CHECK(threshold_from_params(NoiseParams::standard(0.01)) == Approx(15.0 / (21.0 * 17.0)));
}

TEST_CASE("memory-error threshold") {
    CHECK(threshold_with_memory(1e20, 0.1, 10) == Approx(0.01).epsilon(0.15));
    CHECK(threshold_with_memory(1e20, 0.0, 12) == Approx(1.0 / 21.0));
    CHECK_THROWS_AS(threshold_with_memory(1.0, 0.1, 10), std::invalid_argument);
}

TEST_CASE("physical-level one-way model gives D = 5/3") {
    for (double pg : {1e-3, 0.01}) {
        CHECK(physical_oneway_pq0(NoiseParams::standard(pg)) == Approx((5.0 / 3.0) * pg));
    }
    CHECK(physical_oneway_pq0(NoiseParams::standard(0)) == 0.0);
    CHECK(threshold_from_ratio(physical_oneway_pq0(NoiseParams::standard(0.01)) / 0.01) ==
          Approx(0.0286).epsilon(0.01));
}

TEST_CASE("highest level") {
    CHECK(highest_level(1e16, 0.01).estimate == 4);
    auto h10 = highest_level(10.0, (17.0 / 15.0) * 0.01);
    CHECK(h10.reachable);
    CHECK((h10.exact == 1 || h10.exact == 2));
    // monotone nondecreasing in N
    int prev = 0;
    for (double n : {1e2, 1e4, 1e8, 1e16, 1e32}) {
        auto h = highest_level(n, 0.005);
        CHECK(h.exact >= prev);
        prev = h.exact;
    }
    CHECK_THROWS_AS(highest_level(0.5, 0.01), std::invalid_argument);
}

TEST_CASE("resource recursion") {
    AcceptanceInputs unit_acc;  // all probabilities default to 1
    auto table = resource_table(2, unit_acc);
    const auto& l1 = table[0];
    CHECK(l1.r_bare == 7.0);
    CHECK(l1.r_zero == 69.0);  // (2*31 + 7) at unit acceptance
    CHECK(l1.r_plus == 69.0);
    CHECK(l1.r_single == Approx(3 * 7 + 2 * 69));
    CHECK(l1.r_double == Approx(9 * 7 + 8 * 69));
    const auto& l2 = table[1];
    CHECK(l2.r_bare == 49.0);
    // independent evaluation: 2*159 + 3*615 + 6*69 + 10*7 = 2647
    CHECK(l2.r_hexa == Approx(2 * 159 + 3 * 615 + 6 * 69 + 10 * 7));
    CHECK(l2.r_zero == Approx(6 * 159 + 7 * 615 + 11 * 69 + 26 * 7));
    CHECK(l2.r_plus == Approx(5 * 159 + 7 * 615 + 10 * 69 + 24 * 7));

    SUBCASE("strictly increasing in level") {
        auto t = resource_table(5, unit_acc);
        for (size_t i = 1; i < t.size(); ++i) {
            CHECK(t[i].r_zero > t[i - 1].r_zero);
            CHECK(t[i].r_double > t[i - 1].r_double);
        }
    }
    SUBCASE("decreasing acceptance inflates every row") {
        AcceptanceInputs low;
        low.p_zero = {0.5, 0.5};
        low.p_hexa = {1.0, 0.5};
        low.p_plus = {1.0, 0.5};
        auto t = resource_table(2, low);
        CHECK(t[0].r_zero > table[0].r_zero);
        CHECK(t[1].r_hexa > table[1].r_hexa);
    }
    SUBCASE("zero acceptance names the failing level") {
        AcceptanceInputs bad;
        bad.p_zero = {0.0};
        CHECK_THROWS_WITH_AS(resource_table(1, bad),
                             doctest::Contains("level 1"), std::invalid_argument);
    }
    SUBCASE("step structure in N") {
        const double pq0 = (17.0 / 15.0) * 0.001;
        int steps = 0;
        int prev = highest_level(10.0 + 1, pq0).exact;
        for (double n = 1e2; n <= 1e40; n *= 10) {
            int l = highest_level(n, pq0).exact;
            if (l != prev) ++steps;
            prev = l;
        }
        CHECK(steps >= 2);  // the highest level rises in discrete steps
    }
}
