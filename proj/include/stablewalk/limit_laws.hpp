// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Limit laws of normalized hitting times.
//
//   alpha = 1:        gamma eps G(tau)                          -> t / (1 + t)
//   alpha in (1, 2]:  Gamma(1/beta) (gamma/beta) eps G(tau)     -> E G^{1/beta}
//                     (Gamma(1/beta) gamma/beta)^beta tau / G^{-1}(1/eps) -> E^beta G
//   alpha = 2:        2 P(Omega*_x) eps sqrt(tau)               -> E / |N|
//
// E is a unit exponential, N a standard normal and G = G_{1/beta} the
// one-sided stable variable with E exp(-s G) = exp(-s^{1/beta}), all
// independent.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablewalk/jump_models.hpp"
#include "stablewalk/normalization.hpp"
#include "stablewalk/rng.hpp"

namespace stablewalk {

enum class LimitScale {
    GScale,   // eps * G(tau) normalization
    RawTau,   // tau / G^{-1}(1/eps) normalization
    SqrtTau,  // 2 P(Omega*_x) eps sqrt(tau), finite-variance walks only
};

LimitScale parse_limit_scale(std::string_view text);
std::string to_string(LimitScale scale);

struct LimitLawSpec {
    StabilityIndex index{1.0};
    LimitScale scale = LimitScale::GScale;
    double gamma = 1.0;          // 2 f_X(0) P(Omega*)
    double escape_prob_x = 1.0;  // P(Omega*_x)

    static LimitLawSpec for_model(const JumpModel& model, double x, LimitScale scale);
    /// Throws ValidationError when scale and alpha do not go together.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Closed forms

/// t / (1 + t).
double cdf_alpha1(double t);
/// Standard normal CDF.
double normal_cdf(double t);
/// P(E / |N| <= t) = 1 - 2 exp(t^2/2) (1 - Phi(t)).
double cdf_e_over_abs_n(double t);
/// 1 / (1 + c_beta s^{1/beta}) with c_beta = 1 / Gamma(1/beta).
double laplace_transform_w(double beta, double s);

// ---------------------------------------------------------------------------
// Samplers

/// Positive stable variate with Laplace transform exp(-s^rho), rho in (0, 1),
/// by Kanter's uniform-exponential representation.
double sample_one_sided_stable(double rho, RngState& rng);
/// Y = E * G_{1/beta}^{1/beta}, beta finite and >= 2.
double sample_limit_y(double beta, RngState& rng);
/// Y^beta = E^beta * G_{1/beta}.
double sample_limit_y_power(double beta, RngState& rng);
/// W = (c_beta Y)^beta, the solution of the renewal-type integral equation.
double sample_limit_w(double beta, RngState& rng);

struct LaplaceCheck {
    double empirical;
    double theoretical;
    double std_error;  // sd(exp(-sW)) / sqrt(n)
    std::size_t n;
};

/// Compares the empirical mean of exp(-s W) with 1 / (1 + c_beta s^{1/beta}).
LaplaceCheck laplace_check(std::span<const double> w_samples, double beta, double s);

// ---------------------------------------------------------------------------
// Integral equation  F(t) = int_0^t (1 - F(t - v)) v^{-1/alpha} dv

struct VolterraSolution {
    double alpha = 2.0;
    std::vector<double> grid;
    std::vector<double> F;
    /// Sup-norm change against the solution on the half-resolution mesh.
    double refinement_error = 0.0;

    /// Piecewise-linear interpolation; t must lie in [0, grid.back()].
    double operator()(double t) const;
};

/// Product integration on a mesh graded towards 0 (the solution behaves like
/// t^{1/beta} there). The kernel is integrated exactly against the
/// piecewise-linear interpolant of 1 - F. Throws ConvergenceError when the
/// half-resolution solution differs by more than `tolerance`.
VolterraSolution cdf_limit_via_volterra(double alpha, double t_max, int nodes, double tolerance = 1e-3);

// ---------------------------------------------------------------------------
// Monte Carlo limit CDF

/// Sorted sample of E^beta G_{1/beta}; all three limit normalizations are
/// monotone images of it.
class MonteCarloLimitCdf {
  public:
    static constexpr std::size_t kDefaultSamples = 10'000'000;
    static constexpr std::uint64_t kDefaultSeed = 0x6c696d69742d6c61ULL;

    MonteCarloLimitCdf(double beta, std::size_t samples, std::uint64_t seed, unsigned workers = 0);

    /// Process-wide cache, built once per beta with the default size and seed.
    static std::shared_ptr<const MonteCarloLimitCdf> for_beta(double beta);

    double beta() const noexcept { return beta_; }
    std::size_t size() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_power_samples() const noexcept { return sorted_; }

    /// P(E^beta G <= t).
    double cdf_power(double t) const;
    /// P(E G^{1/beta} <= t).
    double cdf_y(double t) const;
    /// P(W <= t), W = c_beta^beta E^beta G.
    double cdf_w(double t) const;
    /// Empirical p-quantile of E^beta G.
    double quantile_power(double p) const;
    /// DKW half-width sqrt(ln(2/delta) / (2n)).
    double dkw_halfwidth(double delta = 1e-3) const;

  private:
    double beta_;
    std::vector<double> sorted_;
};

/// CDF of the limit law in the normalization law.scale.
double limit_cdf(const LimitLawSpec& law, double t);

/// The map from a raw hitting time to the normalization of law.scale.
std::function<double(double)> hitting_transform(const LimitLawSpec& law, const NormalizerG& norm, double epsilon);

}  // namespace stablewalk
