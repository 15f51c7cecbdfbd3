// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/jump_models.hpp"

#include <algorithm>
#include <string>

#include "stablewalk/errors.hpp"
#include "stablewalk/text.hpp"

namespace stablewalk {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double continuous_alpha(const ContinuousJump& kind) {
    if (const auto* s = std::get_if<SymmetricStable>(&kind)) return s->alpha;
    if (std::holds_alternative<CauchyStandard>(kind)) return 1.0;
    return 2.0;
}

double kind_alpha(const JumpKind& kind) {
    if (const auto* mix = std::get_if<ZeroAtomMixture>(&kind)) return continuous_alpha(mix->base);
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroAtomMixture>) return 0.0;
            else return continuous_alpha(ContinuousJump{k});
        },
        kind);
}

void validate(const ContinuousJump& kind) {
    if (const auto* u = std::get_if<UniformSym>(&kind)) {
        if (!(u->halfwidth > 0.0) || !std::isfinite(u->halfwidth))
            throw ValidationError("uniform jump halfwidth must be positive");
    }
    if (const auto* s = std::get_if<SymmetricStable>(&kind)) {
        if (!(s->alpha > 1.0 && s->alpha <= 2.0))
            throw ValidationError("symmetric stable alpha must lie in (1, 2]; use 'cauchy' for alpha = 1");
    }
}

// Signed characteristic function; every shipped law is symmetric so it is real.
double char_fn(const ContinuousJump& kind, double t) {
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianUnit>) {
                return std::exp(-0.5 * t * t);
            } else if constexpr (std::is_same_v<K, UniformSym>) {
                const double ht = k.halfwidth * t;
                return ht == 0.0 ? 1.0 : std::sin(ht) / ht;
            } else if constexpr (std::is_same_v<K, SymmetricStable>) {
                return std::exp(-std::pow(std::fabs(t), k.alpha));
            } else {
                return std::exp(-std::fabs(t));
            }
        },
        kind);
}

double base_density_at_zero(const ContinuousJump& kind) {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianUnit>) {
                return kInvSqrt2Pi;
            } else if constexpr (std::is_same_v<K, UniformSym>) {
                // CLT limit N(0, h^2/3) under A_n = sqrt(n).
                return std::sqrt(3.0) * kInvSqrt2Pi / k.halfwidth;
            } else if constexpr (std::is_same_v<K, SymmetricStable>) {
                return std::tgamma(1.0 / k.alpha) / (k.alpha * std::numbers::pi);
            } else {
                return std::numbers::inv_pi;
            }
        },
        kind);
}

std::string continuous_descriptor(const ContinuousJump& kind) {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianUnit>) return "gaussian";
            else if constexpr (std::is_same_v<K, UniformSym>) return "uniform:" + format_double(k.halfwidth);
            else if constexpr (std::is_same_v<K, SymmetricStable>) return "stable:" + format_double(k.alpha);
            else return "cauchy";
        },
        kind);
}

}  // namespace

StabilityIndex::StabilityIndex(double alpha)
    : alpha_(alpha),
      beta_(alpha == 1.0 ? std::numeric_limits<double>::infinity() : alpha / (alpha - 1.0)) {
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw ValidationError("stability index alpha must lie in [1, 2] (recurrent regime)");
}

JumpModel::JumpModel(JumpKind kind) : kind_(std::move(kind)), index_(kind_alpha(kind_)) {}

JumpModel JumpModel::gaussian() { return JumpModel(GaussianUnit{}); }

JumpModel JumpModel::uniform(double halfwidth) {
    validate(UniformSym{halfwidth});
    return JumpModel(UniformSym{halfwidth});
}

JumpModel JumpModel::stable(double alpha) {
    validate(SymmetricStable{alpha});
    return JumpModel(SymmetricStable{alpha});
}

JumpModel JumpModel::cauchy() { return JumpModel(CauchyStandard{}); }

JumpModel JumpModel::mixture(double p, const JumpModel& base) {
    if (!(p >= 0.0 && p < 1.0)) throw ValidationError("zero-atom mixture weight p must lie in [0, 1)");
    if (base.has_zero_atom() || std::holds_alternative<ZeroAtomMixture>(base.kind_))
        throw ValidationError("zero-atom mixture base must be an atomless law");
    ContinuousJump continuous = std::visit(
        [](const auto& k) -> ContinuousJump {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroAtomMixture>) return GaussianUnit{};
            else return k;
        },
        base.kind_);
    return JumpModel(ZeroAtomMixture{p, continuous});
}

JumpModel JumpModel::parse(std::string_view descriptor) {
    const std::string_view text = trim(descriptor);
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const bool has_arg = colon != std::string_view::npos;

    if (head == "gaussian" && !has_arg) return gaussian();
    if (head == "cauchy" && !has_arg) return cauchy();
    if (head == "uniform" && has_arg) return uniform(parse_double(rest, "uniform halfwidth"));
    if (head == "stable" && has_arg) {
        const double alpha = parse_double(rest, "stable alpha");
        if (alpha == 1.0) return cauchy();
        return stable(alpha);
    }
    if (head == "mix" && has_arg) {
        const auto second = rest.find(':');
        if (second == std::string_view::npos) throw ValidationError("mixture descriptor must be mix:p:<base>");
        const double p = parse_double(rest.substr(0, second), "mixture weight");
        return mixture(p, parse(rest.substr(second + 1)));
    }
    if (head == "lattice" || head == "rademacher" || head == "bernoulli" || head == "pm1") {
        throw ValidationError("lattice jump laws violate the Cramer condition and are not supported");
    }
    throw ValidationError("unknown jump model descriptor '" + std::string(text) + "'");
}

std::string JumpModel::descriptor() const {
    if (const auto* mix = std::get_if<ZeroAtomMixture>(&kind_))
        return "mix:" + format_double(mix->p) + ":" + continuous_descriptor(mix->base);
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroAtomMixture>) return {};
            else return continuous_descriptor(ContinuousJump{k});
        },
        kind_);
}

bool JumpModel::has_zero_atom() const noexcept {
    const auto* mix = std::get_if<ZeroAtomMixture>(&kind_);
    return mix != nullptr && mix->p > 0.0;
}

double sample_jump(const JumpModel& model, RngState& rng) {
    return visit_sampler(model, [&](auto sampler) { return sampler(rng); });
}

double char_fn_modulus(const JumpModel& model, double t) {
    if (const auto* mix = std::get_if<ZeroAtomMixture>(&model.kind()))
        return std::fabs(mix->p + (1.0 - mix->p) * char_fn(mix->base, t));
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroAtomMixture>) return 0.0;
            else return std::fabs(char_fn(ContinuousJump{k}, t));
        },
        model.kind());
}

double cramer_margin(const JumpModel& model, double t_min, double t_max, int grid) {
    if (!(t_min > 0.0 && t_min < t_max) || grid < 2)
        throw ValidationError("cramer_margin needs 0 < t_min < t_max and grid >= 2");
    double best = 0.0;
    const double step = (t_max - t_min) / (grid - 1);
    for (int i = 0; i < grid; ++i) best = std::max(best, char_fn_modulus(model, t_min + step * i));
    return best;
}

double limit_density_at_zero(const JumpModel& model) {
    if (const auto* mix = std::get_if<ZeroAtomMixture>(&model.kind())) {
        // Base norming is kept, so the limit is (1-p)^{1/alpha} times the base limit.
        return base_density_at_zero(mix->base) / std::pow(1.0 - mix->p, 1.0 / model.alpha());
    }
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroAtomMixture>) return 0.0;
            else return base_density_at_zero(ContinuousJump{k});
        },
        model.kind());
}

double escape_probability(const JumpModel& model, double x) {
    // With an atom only at 0, S_n = 0 exactly iff X_1 = ... = X_n = 0, which
    // forces X_1 = 0. No other point carries mass.
    if (const auto* mix = std::get_if<ZeroAtomMixture>(&model.kind())) return x == 0.0 ? 1.0 - mix->p : 1.0;
    return 1.0;
}

double gamma_constant(const JumpModel& model) {
    return 2.0 * limit_density_at_zero(model) * escape_probability(model, 0.0);
}

}  // namespace stablewalk
