#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "clusterft/noise.hpp"
#include "clusterft/stats.hpp"

using namespace clusterft;

TEST_CASE("zero parameters never produce errors") {
    NoiseSampler s(NoiseParams::standard(0));
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(s.sample_two_qubit(rng).has_value());
        CHECK_FALSE(s.sample_prep(PrepBasis::Z, rng).has_value());
        CHECK_FALSE(s.sample_meas_flip(rng));
    }
}

TEST_CASE("deterministic limits") {
    NoiseParams p;
    p.p_prep = 1.0;
    p.p_meas = 1.0;
    NoiseSampler s(p);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        CHECK(s.sample_prep(PrepBasis::Z, rng) == Pauli::X);
        CHECK(s.sample_prep(PrepBasis::X, rng) == Pauli::Z);
        CHECK(s.sample_meas_flip(rng));
    }
    NoiseParams only_xz;
    only_xz.set_p_ab(Pauli::X, Pauli::Z, 0.5);
    NoiseSampler s2(only_xz);
    int hits = 0;
    for (int i = 0; i < 2000; ++i) {
        auto e = s2.sample_two_qubit(rng);
        if (e) {
            CHECK(e->first == Pauli::X);
            CHECK(e->second == Pauli::Z);
            ++hits;
        }
    }
    CHECK(hits > 800);
    CHECK(hits < 1200);
}

TEST_CASE("two-qubit marginals are uniform within 5 sigma") {
    const double pg = 0.015;
    NoiseSampler s(NoiseParams::standard(pg));
    Rng rng(42);
    const uint64_t n = 1000000;
    std::array<uint64_t, 15> counts{};
    for (uint64_t i = 0; i < n; ++i) {
        if (auto e = s.sample_two_qubit(rng)) ++counts[two_qubit_pair_index(e->first, e->second)];
    }
    const double expect = n * pg / 15.0;
    const double sigma = std::sqrt(expect);
    for (auto c : counts) {
        CHECK(std::fabs(static_cast<double>(c) - expect) < 5 * sigma);
    }
    SUBCASE("chi-squared over the 15 pairs is unremarkable") {
        double stat = 0;
        for (auto c : counts) {
            const double d = static_cast<double>(c) - expect;
            stat += d * d / expect;
        }
        CHECK(chi_squared_pvalue(stat, 14) > 1e-4);
    }
}

TEST_CASE("preparation and measurement rates at 5 sigma") {
    const double pg = 0.015;
    NoiseSampler s(NoiseParams::standard(pg));
    Rng rng(7);
    const uint64_t n = 1000000;
    uint64_t prep = 0, meas = 0;
    for (uint64_t i = 0; i < n; ++i) {
        if (s.sample_prep(PrepBasis::Z, rng)) ++prep;
        if (s.sample_meas_flip(rng)) ++meas;
    }
    const double expect = n * 0.004;
    const double sigma = std::sqrt(expect);
    CHECK(std::fabs(static_cast<double>(prep) - expect) < 5 * sigma);
    CHECK(std::fabs(static_cast<double>(meas) - expect) < 5 * sigma);
}

TEST_CASE("validation rejects malformed parameters") {
    NoiseParams p;
    p.p_meas = 1.5;
    CHECK_THROWS_AS(NoiseSampler{p}, std::invalid_argument);
    NoiseParams q;
    for (auto& v : q.p_two) v = 0.1;  // sums to 1.5
    CHECK_THROWS_AS(NoiseSampler{q}, std::invalid_argument);
}
