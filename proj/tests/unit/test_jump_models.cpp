// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "stablewalk/errors.hpp"
#include "stablewalk/jump_models.hpp"

using namespace stablewalk;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form characteristic functions, written out independently of the library.
double oracle_cf(const std::string& family, double t, double param = 0.0) {
    if (family == "gaussian") return std::exp(-0.5 * t * t);
    if (family == "uniform") return std::sin(param * t) / (param * t);
    if (family == "stable") return std::exp(-std::pow(std::fabs(t), param));
    if (family == "cauchy") return std::exp(-std::fabs(t));
    return NAN;
}

std::vector<JumpModel> shipped_families() {
    return {JumpModel::gaussian(),   JumpModel::uniform(1.0),
            JumpModel::uniform(2.5), JumpModel::stable(1.5),
            JumpModel::stable(1.2),  JumpModel::stable(2.0),
            JumpModel::cauchy(),     JumpModel::mixture(0.3, JumpModel::gaussian()),
            JumpModel::mixture(0.5, JumpModel::cauchy())};
}

}  // namespace

TEST_CASE("StabilityIndex conjugate exponent") {
    CHECK(StabilityIndex(2.0).beta() == doctest::Approx(2.0));
    CHECK(StabilityIndex(1.5).beta() == doctest::Approx(3.0));
    CHECK(std::isinf(StabilityIndex(1.0).beta()));
    CHECK(StabilityIndex(1.0).beta_infinite());
    CHECK(StabilityIndex(1.5).inverse_alpha() + StabilityIndex(1.5).inverse_beta() == doctest::Approx(1.0));
    CHECK_THROWS_AS(StabilityIndex(0.9), ValidationError);
    CHECK_THROWS_AS(StabilityIndex(2.1), ValidationError);
    CHECK_THROWS_AS(StabilityIndex(NAN), ValidationError);
}

TEST_CASE("construction validates parameters") {
    CHECK_THROWS_AS(JumpModel::stable(0.8), ValidationError);
    CHECK_THROWS_AS(JumpModel::stable(2.5), ValidationError);
    CHECK_THROWS_AS(JumpModel::uniform(0.0), ValidationError);
    CHECK_THROWS_AS(JumpModel::uniform(-1.0), ValidationError);
    CHECK_THROWS_AS(JumpModel::mixture(1.0, JumpModel::gaussian()), ValidationError);
    CHECK_THROWS_AS(JumpModel::mixture(-0.1, JumpModel::gaussian()), ValidationError);
    CHECK_THROWS_AS(JumpModel::mixture(0.2, JumpModel::mixture(0.1, JumpModel::cauchy())), ValidationError);
    CHECK_THROWS_AS(JumpModel::parse("lattice"), ValidationError);
    CHECK_THROWS_AS(JumpModel::parse("rademacher"), ValidationError);
    CHECK_THROWS_AS(JumpModel::parse("poisson"), ValidationError);
    CHECK_THROWS_AS(JumpModel::parse("uniform"), ValidationError);
    CHECK_THROWS_AS(JumpModel::parse("stable:abc"), ValidationError);
    CHECK_THROWS_AS(JumpModel::parse("mix:0.5"), ValidationError);
}

TEST_CASE("descriptor round trip") {
    for (const auto& m : shipped_families()) {
        CAPTURE(m.descriptor());
        CHECK(JumpModel::parse(m.descriptor()) == m);
    }
    CHECK(JumpModel::parse("stable:1") == JumpModel::cauchy());
    CHECK(JumpModel::parse("  gaussian ") == JumpModel::gaussian());
    CHECK(JumpModel::parse("mix:0.25:stable:1.5") == JumpModel::mixture(0.25, JumpModel::stable(1.5)));
    CHECK(JumpModel::parse("cauchy").alpha() == 1.0);
    CHECK(JumpModel::parse("uniform:3").alpha() == 2.0);
}

TEST_CASE("char_fn_modulus examples") {
    CHECK(char_fn_modulus(JumpModel::gaussian(), 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(char_fn_modulus(JumpModel::cauchy(), 1.0) == doctest::Approx(0.3678794).epsilon(1e-6));
    CHECK(char_fn_modulus(JumpModel::stable(1.5), 2.0) == doctest::Approx(std::exp(-std::pow(2.0, 1.5))));
    CHECK(char_fn_modulus(JumpModel::uniform(2.0), 0.5) == doctest::Approx(std::sin(1.0)));
    CHECK(char_fn_modulus(JumpModel::mixture(0.3, JumpModel::gaussian()), 50.0) == doctest::Approx(0.3).epsilon(1e-12));
    for (const auto& m : shipped_families()) CHECK(char_fn_modulus(m, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("empirical characteristic function matches the closed form") {
    struct Case {
        JumpModel model;
        std::string family;
        double param;
        double p;  // zero-atom weight
    };
    const std::vector<Case> cases = {
        {JumpModel::gaussian(), "gaussian", 0.0, 0.0},
        {JumpModel::uniform(1.0), "uniform", 1.0, 0.0},
        {JumpModel::stable(1.5), "stable", 1.5, 0.0},
        {JumpModel::stable(2.0), "stable", 2.0, 0.0},
        {JumpModel::stable(1.2), "stable", 1.2, 0.0},
        {JumpModel::cauchy(), "cauchy", 0.0, 0.0},
        {JumpModel::mixture(0.3, JumpModel::gaussian()), "gaussian", 0.0, 0.3},
        {JumpModel::mixture(0.5, JumpModel::cauchy()), "cauchy", 0.0, 0.5},
    };
    constexpr int kDraws = 1'000'000;
    for (const auto& c : cases) {
        CAPTURE(c.model.descriptor());
        RngState rng(2024);
        std::vector<double> xs(kDraws);
        for (auto& x : xs) x = sample_jump(c.model, rng);
        for (const double t : {0.5, 1.0, 2.0}) {
            std::complex<double> mean{0.0, 0.0};
            for (const double x : xs) mean += std::polar(1.0, t * x);
            mean /= static_cast<double>(kDraws);
            const double theory = c.p + (1.0 - c.p) * oracle_cf(c.family, t, c.param);
            CAPTURE(t);
            CHECK(std::fabs(std::abs(mean) - theory) < 4.0 / std::sqrt(static_cast<double>(kDraws)));
            CHECK(char_fn_modulus(c.model, t) == doctest::Approx(theory).epsilon(1e-12));
        }
    }
}

TEST_CASE("stable sampler at alpha = 2 is N(0, 2)") {
    RngState rng(5);
    const int n = 1'000'000;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_jump(JumpModel::stable(2.0), rng);
        sq += x * x;
    }
    CHECK(std::fabs(sq / n - 2.0) < 4.0 * std::sqrt(8.0 / n));
}

TEST_CASE("norming sequence is the exact power law") {
    for (const double alpha : {1.0, 1.2, 1.5, 1.8, 2.0}) {
        const NormingSequence a(alpha);
        for (const double n : {1.0, 10.0, 1e3, 1e6, 1e9}) {
            CAPTURE(alpha);
            CAPTURE(n);
            CHECK(std::fabs(a(2.0 * n) / a(n) - std::pow(2.0, 1.0 / alpha)) < 1e-12);
        }
    }
}

TEST_CASE("cramer margin") {
    CHECK(cramer_margin(JumpModel::gaussian(), 1, 100, 1000) < 0.61);
    CHECK(cramer_margin(JumpModel::uniform(1.0), 2, 100, 1000) < 0.5);
    CHECK(cramer_margin(JumpModel::mixture(0.9, JumpModel::gaussian()), 10, 100, 100) == doctest::Approx(0.9));
    for (const auto& m : shipped_families()) {
        CAPTURE(m.descriptor());
        CHECK(cramer_margin(m, 1.0, 1e4, 1000) < 1.0);
    }
    CHECK_THROWS_AS(cramer_margin(JumpModel::gaussian(), 2, 1, 10), ValidationError);
    CHECK_THROWS_AS(cramer_margin(JumpModel::gaussian(), 1, 2, 1), ValidationError);
}

TEST_CASE("limit density at zero") {
    CHECK(limit_density_at_zero(JumpModel::gaussian()) == doctest::Approx(0.3989423).epsilon(1e-7));
    CHECK(std::fabs(limit_density_at_zero(JumpModel::cauchy()) - 1.0 / kPi) < 1e-12);
    CHECK(limit_density_at_zero(JumpModel::stable(2.0)) == doctest::Approx(0.2820948).epsilon(1e-7));
    CHECK(limit_density_at_zero(JumpModel::stable(1.5)) ==
          doctest::Approx(std::tgamma(2.0 / 3.0) / (1.5 * kPi)).epsilon(1e-12));
    // uniform(h) has variance h^2/3.
    CHECK(limit_density_at_zero(JumpModel::uniform(2.0)) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi * 4.0 / 3.0)).epsilon(1e-12));
    CHECK(limit_density_at_zero(JumpModel::mixture(0.5, JumpModel::cauchy())) == doctest::Approx(2.0 / kPi));
    CHECK(limit_density_at_zero(JumpModel::mixture(0.5, JumpModel::gaussian())) ==
          doctest::Approx(std::sqrt(2.0) / std::sqrt(2.0 * kPi)));
}

TEST_CASE("escape probability and gamma") {
    CHECK(escape_probability(JumpModel::gaussian(), 0.0) == 1.0);
    CHECK(escape_probability(JumpModel::mixture(0.25, JumpModel::cauchy()), 0.0) == doctest::Approx(0.75));
    CHECK(escape_probability(JumpModel::mixture(0.25, JumpModel::cauchy()), 1.0) == 1.0);
    CHECK(gamma_constant(JumpModel::cauchy()) == doctest::Approx(2.0 / kPi));
    for (const double p : {0.1, 0.25, 0.5, 0.9})
        CHECK(gamma_constant(JumpModel::mixture(p, JumpModel::cauchy())) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(gamma_constant(JumpModel::stable(1.5)) == doctest::Approx(2.0 * std::tgamma(2.0 / 3.0) / (1.5 * kPi)));
}

TEST_CASE("mixture sampler produces the atom with weight p") {
    RngState rng(77);
    const auto model = JumpModel::mixture(0.25, JumpModel::cauchy());
    const int n = 1'000'000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) zeros += sample_jump(model, rng) == 0.0 ? 1 : 0;
    CHECK(std::fabs(zeros - 0.25 * n) < 4.0 * std::sqrt(n * 0.25 * 0.75));
}
