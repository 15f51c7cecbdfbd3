// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "stablewalk/errors.hpp"
#include "stablewalk/limit_laws.hpp"
#include "stablewalk/stats.hpp"

using namespace stablewalk;

namespace {

SampleSet make_set(std::vector<HittingSample> samples, std::uint64_t cap) {
    SampleSet set;
    set.config.cap = cap;
    set.config.trials = samples.size();
    set.samples = std::move(samples);
    return set;
}

const auto kIdentity = [](double s) { return s; };

}  // namespace

TEST_CASE("build_ecdf counting examples") {
    const auto set = make_set({{Hit{1}, false}, {Hit{2}, false}, {Hit{2}, false}}, 10);
    const auto ecdf = build_ecdf(set, kIdentity);
    CHECK(ecdf(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(ecdf(2.0) == 1.0);
    CHECK(ecdf(0.5) == 0.0);
    CHECK(ecdf.left_limit(2.0) == doctest::Approx(1.0 / 3.0));
    CHECK_FALSE(ecdf.censor_point.has_value());

    const auto censored = make_set({{Censored{10}, false}, {Censored{10}, false}}, 10);
    const auto all_censored = build_ecdf(censored, kIdentity);
    REQUIRE(all_censored.censor_point.has_value());
    CHECK(*all_censored.censor_point == 10.0);
    for (double t = 0.0; t < 10.0; t += 0.5) CHECK(all_censored(t) == 0.0);

    const auto mixed = make_set({{Hit{1}, true}, {Hit{3}, false}, {Censored{10}, false}, {Hit{1}, true}}, 10);
    const auto conditioned = build_ecdf(mixed, kIdentity);
    CHECK(conditioned.n == 2);
    CHECK(conditioned.excluded_count == 2);
    CHECK(conditioned(5.0) == 0.5);
}

TEST_CASE("build_ecdf rejects non-monotone transforms") {
    const auto set = make_set({{Hit{1}, false}}, 1000);
    CHECK_THROWS_AS(build_ecdf(set, [](double s) { return std::sin(s); }), ValidationError);
    CHECK_THROWS_AS(build_ecdf(set, [](double) { return 1.0; }), ValidationError);
}

TEST_CASE("ks_truncated examples") {
    std::mt19937_64 gen(5);
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> draws(1'000'000);
    for (auto& v : draws) v = exp_dist(gen);
    const auto ecdf = ecdf_from_values(draws);
    const auto theory = [](double t) { return 1.0 - std::exp(-t); };
    const auto report = ks_truncated(ecdf, theory, 5.0);
    CHECK(report.dkw == doctest::Approx(0.0019).epsilon(0.02));
    CHECK(report.ks < report.dkw);
    CHECK(report.n_effective == 1'000'000);
    CHECK(report.delta == 1e-3);

    const auto zero = ks_truncated(ecdf, [](double) { return 0.0; }, 1.0);
    CHECK(zero.ks == doctest::Approx(ecdf(1.0)));

    const auto set = make_set({{Hit{2}, false}, {Censored{100}, false}}, 100);
    const auto censored = build_ecdf(set, kIdentity);
    CHECK_THROWS_AS(ks_truncated(censored, theory, 100.0), StatisticalRefusal);
    CHECK_THROWS_AS(ks_truncated(censored, theory, 150.0), StatisticalRefusal);
    CHECK_NOTHROW(ks_truncated(censored, theory, 99.0));
    CHECK_THROWS_AS(ks_truncated(EmpiricalCdf{}, theory, 1.0), StatisticalRefusal);
    CHECK_THROWS_AS(ks_truncated(ecdf, theory, 0.0), ValidationError);
}

TEST_CASE("ks_truncated evaluates at jump points, the two-sided variant also at left limits") {
    const auto ecdf = ecdf_from_values({1.0});
    const auto half = [](double t) { return t < 1.0 ? 0.0 : 0.5; };
    CHECK(ks_truncated(ecdf, half, 2.0).ks == doctest::Approx(0.5));
    CHECK(ks_truncated_two_sided(ecdf, half, 2.0) == doctest::Approx(0.5));
    // Theory reaching 1 just left of the only jump: invisible at the jump, full gap at its left limit.
    const auto ramp = [](double t) { return std::min(1.0, t); };
    CHECK(ks_truncated(ecdf, ramp, 2.0).ks == doctest::Approx(0.0));
    CHECK(ks_truncated_two_sided(ecdf, ramp, 2.0) == doctest::Approx(1.0));
    const auto two = ecdf_from_values({1.0, 2.0});
    const auto quarter = [](double t) { return t / 4.0; };
    CHECK(ks_truncated(two, quarter, 3.0).ks == doctest::Approx(0.5));
    CHECK(ks_truncated_two_sided(two, quarter, 3.0) == doctest::Approx(0.5));
    // Three points against uniform(0, 4): jump-point gaps 0.25-1/3, 0.5-2/3, 0.75-1.
    const auto three = ecdf_from_values({1.0, 2.0, 3.0});
    CHECK(ks_truncated(three, quarter, 3.5).ks == doctest::Approx(0.25));
    CHECK(ks_truncated_two_sided(three, quarter, 3.5) == doctest::Approx(0.25));
    CHECK(ks_truncated(three, quarter, 1.5).ks == doctest::Approx(1.0 / 3.0 - 0.25).epsilon(1e-12));
    // A lattice matched exactly at its atoms: one-sided 0, two-sided one atom of mass.
    std::vector<double> xs;
    for (int k = 1; k <= 50; ++k)
        for (int r = 0; r < 40; ++r) xs.push_back(k / 10.0);
    const auto lat = ecdf_from_values(xs);
    const auto uni = [](double t) { return std::min(1.0, t / 5.0); };
    CHECK(ks_truncated(lat, uni, 4.9).ks == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ks_truncated_two_sided(lat, uni, 4.9) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK_THROWS_AS(ks_truncated_two_sided(EmpiricalCdf{}, uni, 1.0), StatisticalRefusal);
}

TEST_CASE("DKW band soundness self-test") {
    constexpr int kReps = 200;
    constexpr int kN = 10'000;
    constexpr double kDelta = 0.05;
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int exceed = 0;
    for (int r = 0; r < kReps; ++r) {
        std::vector<double> xs(kN);
        for (auto& v : xs) v = unif(gen);
        const auto report = ks_truncated(ecdf_from_values(xs), [](double t) { return std::min(1.0, t); }, 1.0, kDelta);
        exceed += report.ks > report.dkw ? 1 : 0;
    }
    CHECK(static_cast<double>(exceed) / kReps <= kDelta + 0.03);
    CHECK(dkw_halfwidth(kN, kDelta) == doctest::Approx(std::sqrt(std::log(40.0) / 20000.0)));
    CHECK(dkw_halfwidth(0, kDelta) == 1.0);
}

TEST_CASE("ks is invariant under a common increasing reparametrization") {
    std::mt19937_64 gen(8);
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<HittingSample> samples;
    for (int i = 0; i < 5000; ++i) {
        const auto steps = static_cast<std::uint64_t>(std::ceil(1000.0 * exp_dist(gen)));
        if (steps > 3000) samples.push_back({Censored{3000}, false});
        else samples.push_back({Hit{steps}, false});
    }
    const auto set = make_set(samples, 3000);
    const double beta = 3.0;
    // raw scale s/1000 against exp(1) CDF; G-like scale (s/1000)^{1/beta} against the mapped CDF.
    const auto raw = [](double s) { return s / 1000.0; };
    const auto root = [beta](double s) { return std::pow(s / 1000.0, 1.0 / beta); };
    const auto theory_raw = [](double t) { return 1.0 - std::exp(-t); };
    const auto theory_root = [beta](double t) { return 1.0 - std::exp(-std::pow(t, beta)); };
    const auto a = ks_truncated(build_ecdf(set, raw), theory_raw, 2.0);
    const auto b = ks_truncated(build_ecdf(set, root), theory_root, std::pow(2.0, 1.0 / beta));
    CHECK(a.ks == doctest::Approx(b.ks).epsilon(1e-12));
}

TEST_CASE("ecdf of a merged sample set is the weighted merge") {
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<std::uint64_t> steps(1, 120);
    std::vector<HittingSample> a;
    std::vector<HittingSample> b;
    for (int i = 0; i < 300; ++i) a.push_back(i % 7 == 0 ? HittingSample{Censored{100}, false} : HittingSample{Hit{steps(gen) % 100 + 1}, i % 11 == 0});
    for (int i = 0; i < 500; ++i) b.push_back(i % 5 == 0 ? HittingSample{Censored{100}, false} : HittingSample{Hit{steps(gen) % 100 + 1}, false});
    std::vector<HittingSample> merged = a;
    merged.insert(merged.end(), b.begin(), b.end());
    const auto ea = build_ecdf(make_set(a, 100), kIdentity);
    const auto eb = build_ecdf(make_set(b, 100), kIdentity);
    const auto em = build_ecdf(make_set(merged, 100), kIdentity);
    CHECK(em.n == ea.n + eb.n);
    CHECK(em.excluded_count == ea.excluded_count + eb.excluded_count);
    for (double t = 0.0; t <= 100.0; t += 0.5) {
        const double weighted = (ea.n * ea(t) + eb.n * eb(t)) / static_cast<double>(ea.n + eb.n);
        REQUIRE(em(t) == doctest::Approx(weighted).epsilon(1e-14));
    }
}

TEST_CASE("censoring horizon") {
    const auto sq = [](double s) { return std::sqrt(s); };
    CHECK(censoring_horizon(sq, 10.0, 1'000'000) == 101);
    CHECK(censoring_horizon(sq, 0.5, 100) == 1);
    CHECK(censoring_horizon(sq, 10.0, 50) == 50);
    CHECK_THROWS_AS(censoring_horizon(sq, 1.0, 0), ValidationError);
}

TEST_CASE("loglog slope") {
    SUBCASE("noiseless line") {
        std::vector<SlopePoint> points;
        for (const double le : {-1.0, -2.0, -3.0, -4.0})
            for (int k = 0; k < 3; ++k) points.push_back({le, -2.0 * le, false});
        const auto report = loglog_slope(points);
        CHECK(report.slope == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(report.std_error == doctest::Approx(0.0));
        CHECK(report.n_points == 4);
        CHECK(report.n_censored == 0);
    }
    SUBCASE("two abscissae give zero stderr") {
        const std::vector<SlopePoint> points = {{-1.0, 2.0, false}, {-2.0, 4.5, false}};
        const auto report = loglog_slope(points);
        CHECK(report.slope == doctest::Approx(-2.5));
        CHECK(report.std_error == 0.0);
    }
    SUBCASE("medians, not means") {
        std::vector<SlopePoint> points = {{-1.0, 1.0, false}, {-1.0, 2.0, false}, {-1.0, 90.0, false},
                                          {-2.0, 3.0, false}, {-2.0, 4.0, false}, {-2.0, 5.0, false}};
        const auto report = loglog_slope(points);
        CHECK(report.slope == doctest::Approx(-2.0));
    }
    SUBCASE("censored points rank above hits") {
        std::vector<SlopePoint> points = {{-1.0, 1.0, false}, {-1.0, 2.0, false}, {-1.0, 9.0, true},
                                          {-2.0, 3.0, false}, {-2.0, 9.0, true},  {-2.0, 9.0, true},
                                          {-3.0, 5.0, false}, {-3.0, 6.0, false}, {-3.0, 9.0, true}};
        const auto report = loglog_slope(points);
        CHECK(report.n_points == 2);  // level -2 has a censored median
        CHECK(report.n_censored == 4);
        CHECK(report.slope == doctest::Approx(-2.0));
    }
    SUBCASE("errors") {
        const std::vector<SlopePoint> single = {{-1.0, 1.0, false}, {-1.0, 2.0, false}};
        CHECK_THROWS_AS(loglog_slope(single), StatisticalRefusal);
        const std::vector<SlopePoint> censored = {{-1.0, 1.0, true}, {-2.0, 2.0, true}};
        CHECK_THROWS_AS(loglog_slope(censored), StatisticalRefusal);
        CHECK_THROWS_AS(loglog_slope(std::vector<SlopePoint>{}), StatisticalRefusal);
    }
}

TEST_CASE("json serialization keys") {
    const auto ks = to_json(KsReport{0.01, 2.0, 100, 0.1, 1e-3});
    CHECK(ks.size() == 5);
    for (const char* key : {"ks", "t_max", "n_effective", "dkw", "delta"}) CHECK(ks.contains(key));
    const auto slope = to_json(SlopeReport{-2.0, 0.1, 6, 3});
    CHECK(slope.size() == 4);
    for (const char* key : {"slope", "stderr", "n_points", "n_censored"}) CHECK(slope.contains(key));
    CHECK(slope["stderr"].get<double>() == 0.1);
}

TEST_CASE("theory-law samples pass the analyze statistic") {
    RngState rng(3);
    std::vector<double> values(1'000'000);
    for (auto& v : values) v = std::numbers::sqrt2 * sample_limit_y(2.0, rng);
    const auto report = ks_truncated(ecdf_from_values(values), cdf_e_over_abs_n, 5.0);
    CHECK(report.ks < 0.002);
}
