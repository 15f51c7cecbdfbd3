// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Jump laws of the walk. Every shipped family has a closed-form
// characteristic function and exact power-law norming A_n = n^{1/alpha}.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "stablewalk/rng.hpp"

namespace stablewalk {

/// Stability index alpha in [1, 2] together with its conjugate
/// beta (1/alpha + 1/beta = 1). alpha == 1 is stored with beta == +inf.
class StabilityIndex {
  public:
    explicit StabilityIndex(double alpha);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    bool beta_infinite() const noexcept { return alpha_ == 1.0; }
    double inverse_alpha() const noexcept { return 1.0 / alpha_; }
    /// 1/beta, i.e. 1 - 1/alpha; zero when alpha == 1.
    double inverse_beta() const noexcept { return 1.0 - 1.0 / alpha_; }

  private:
    double alpha_;
    double beta_;
};

/// A_n = n^{1/alpha}.
class NormingSequence {
  public:
    explicit NormingSequence(double alpha) : exponent_(1.0 / alpha) {}

    double exponent() const noexcept { return exponent_; }
    double operator()(double n) const noexcept {
        if (exponent_ == 1.0) return n;
        if (exponent_ == 0.5) return std::sqrt(n);
        return std::pow(n, exponent_);
    }

  private:
    double exponent_;
};

struct GaussianUnit {
    friend bool operator==(const GaussianUnit&, const GaussianUnit&) = default;
};
struct UniformSym {
    double halfwidth = 1.0;
    friend bool operator==(const UniformSym&, const UniformSym&) = default;
};
struct SymmetricStable {
    double alpha = 2.0;  // in (1, 2]
    friend bool operator==(const SymmetricStable&, const SymmetricStable&) = default;
};
struct CauchyStandard {
    friend bool operator==(const CauchyStandard&, const CauchyStandard&) = default;
};

using ContinuousJump = std::variant<GaussianUnit, UniformSym, SymmetricStable, CauchyStandard>;

/// With probability p the jump is exactly 0, otherwise a draw from base.
struct ZeroAtomMixture {
    double p = 0.0;  // in [0, 1)
    ContinuousJump base;
    friend bool operator==(const ZeroAtomMixture&, const ZeroAtomMixture&) = default;
};

using JumpKind = std::variant<GaussianUnit, UniformSym, SymmetricStable, CauchyStandard, ZeroAtomMixture>;

/// Immutable description of a jump law. Construction validates parameters.
class JumpModel {
  public:
    static JumpModel gaussian();
    static JumpModel uniform(double halfwidth);
    static JumpModel stable(double alpha);
    static JumpModel cauchy();
    static JumpModel mixture(double p, const JumpModel& base);

    /// Parses "gaussian" | "uniform:h" | "stable:alpha" | "cauchy" | "mix:p:<base>".
    static JumpModel parse(std::string_view descriptor);
    /// Canonical descriptor; parse(descriptor()) == *this.
    std::string descriptor() const;

    const JumpKind& kind() const noexcept { return kind_; }
    const StabilityIndex& index() const noexcept { return index_; }
    double alpha() const noexcept { return index_.alpha(); }
    double beta() const noexcept { return index_.beta(); }
    NormingSequence norming() const { return NormingSequence(alpha()); }
    bool has_zero_atom() const noexcept;

    friend bool operator==(const JumpModel& a, const JumpModel& b) { return a.kind_ == b.kind_; }

  private:
    explicit JumpModel(JumpKind kind);
    JumpKind kind_;
    StabilityIndex index_;
};

// Samplers. Each is a small value type so the hot loop in the walk engine
// can be instantiated per family instead of dispatching per jump.

struct GaussianSampler {
    double operator()(RngState& rng) const noexcept { return standard_normal(rng); }
};

struct UniformSampler {
    double halfwidth;
    double operator()(RngState& rng) const noexcept {
        return halfwidth * (2.0 * uniform01(rng) - 1.0);
    }
};

struct CauchySampler {
    double operator()(RngState& rng) const noexcept { return standard_cauchy(rng); }
};

/// Chambers-Mallows-Stuck representation of a symmetric alpha-stable law
/// with characteristic function exp(-|t|^alpha), alpha in (1, 2].
struct StableSampler {
    double alpha;
    double operator()(RngState& rng) const noexcept {
        const double v = std::numbers::pi * (uniform_open(rng) - 0.5);
        const double w = exponential(rng);
        if (alpha == 2.0) return 2.0 * std::sin(v) * std::sqrt(w);
        const double a_v = alpha * v;
        const double log_tail =
            ((1.0 - alpha) * std::log(std::cos(v - a_v) / w) - std::log(std::cos(v))) / alpha;
        return std::sin(a_v) * std::exp(log_tail);
    }
};

template <class Base>
struct MixtureSampler {
    std::uint64_t zero_threshold;  // P(rng() < threshold) == p up to 2^-64
    Base base;
    double operator()(RngState& rng) const noexcept {
        if (rng() < zero_threshold) return 0.0;
        return base(rng);
    }
};

namespace detail {

inline std::uint64_t probability_threshold(double p) noexcept {
    if (p <= 0.0) return 0;
    return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

template <class F>
decltype(auto) visit_continuous_sampler(const ContinuousJump& kind, F&& f) {
    return std::visit(
        [&](const auto& k) -> decltype(auto) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianUnit>) return f(GaussianSampler{});
            else if constexpr (std::is_same_v<K, UniformSym>) return f(UniformSampler{k.halfwidth});
            else if constexpr (std::is_same_v<K, SymmetricStable>) return f(StableSampler{k.alpha});
            else return f(CauchySampler{});
        },
        kind);
}

}  // namespace detail

/// Calls f(sampler) with the concrete sampler type for the model.
template <class F>
decltype(auto) visit_sampler(const JumpModel& model, F&& f) {
    return std::visit(
        [&](const auto& k) -> decltype(auto) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroAtomMixture>) {
                const auto threshold = detail::probability_threshold(k.p);
                return detail::visit_continuous_sampler(k.base, [&](auto base) -> decltype(auto) {
                    return f(MixtureSampler<decltype(base)>{threshold, base});
                });
            } else {
                return detail::visit_continuous_sampler(ContinuousJump{k}, f);
            }
        },
        model.kind());
}

/// One draw from the jump law.
double sample_jump(const JumpModel& model, RngState& rng);

/// |E exp(itX_1)| from the closed-form characteristic function.
double char_fn_modulus(const JumpModel& model, double t);

/// max of char_fn_modulus over a uniform grid of `grid` points on [t_min, t_max].
double cramer_margin(const JumpModel& model, double t_min, double t_max, int grid);

/// Density at 0 of the limit law of S_n / A_n.
double limit_density_at_zero(const JumpModel& model);

/// P(S_n != x for all n >= 1) for the walk started at 0.
double escape_probability(const JumpModel& model, double x);

/// gamma = 2 f_X(0) P(Omega*).
double gamma_constant(const JumpModel& model);

}  // namespace stablewalk
