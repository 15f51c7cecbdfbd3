// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "stablewalk/errors.hpp"
#include "stablewalk/parallel.hpp"
#include "stablewalk/walk_engine.hpp"

namespace stablewalk {

LimitScale parse_limit_scale(std::string_view text) {
    if (text == "gscale") return LimitScale::GScale;
    if (text == "rawtau") return LimitScale::RawTau;
    if (text == "sqrt-tau") return LimitScale::SqrtTau;
    throw ValidationError("unknown limit law scale '" + std::string(text) + "' (gscale, rawtau, sqrt-tau)");
}

std::string to_string(LimitScale scale) {
    switch (scale) {
        case LimitScale::GScale: return "gscale";
        case LimitScale::RawTau: return "rawtau";
        case LimitScale::SqrtTau: return "sqrt-tau";
    }
    return "?";
}

LimitLawSpec LimitLawSpec::for_model(const JumpModel& model, double x, LimitScale scale) {
    LimitLawSpec law{model.index(), scale, gamma_constant(model), escape_probability(model, x)};
    law.validate();
    return law;
}

void LimitLawSpec::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("limit law gamma must be positive");
    if (!(escape_prob_x > 0.0 && escape_prob_x <= 1.0))
        throw ValidationError("limit law escape probability must lie in (0, 1]");
    const double alpha = index.alpha();
    if (alpha == 1.0 && scale != LimitScale::GScale)
        throw ValidationError("alpha = 1 limit law is stated in the G scale only");
    if (scale == LimitScale::SqrtTau && alpha != 2.0)
        throw ValidationError("sqrt-tau normalization requires alpha = 2");
}

// ---------------------------------------------------------------------------

double cdf_alpha1(double t) {
    if (!(t >= 0.0)) throw ValidationError("cdf_alpha1 needs t >= 0");
    if (std::isinf(t)) return 1.0;
    return t / (1.0 + t);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double cdf_e_over_abs_n(double t) {
    if (!(t >= 0.0)) throw ValidationError("cdf_e_over_abs_n needs t >= 0");
    if (t > 30.0) {
        // 2 e^{t^2/2} (1 - Phi(t)) = e^{x^2} erfc(x) with x = t / sqrt 2.
        const double x = t / std::numbers::sqrt2;
        const double x2 = x * x;
        const double u = 1.0 / (2.0 * x2);
        // 1 - u + 3u^2 - 15u^3 + 105u^4 - 945u^5, truncation below 1e-15 for t > 30.
        const double series = 1.0 + u * (-1.0 + u * (3.0 + u * (-15.0 + u * (105.0 + u * -945.0))));
        return 1.0 - series / (x * std::sqrt(std::numbers::pi));
    }
    return 1.0 - std::exp(0.5 * t * t) * std::erfc(t / std::numbers::sqrt2);
}

double laplace_transform_w(double beta, double s) {
    if (!(s >= 0.0)) throw ValidationError("Laplace argument must be non-negative");
    const double c_beta = 1.0 / std::tgamma(1.0 / beta);
    return 1.0 / (1.0 + c_beta * std::pow(s, 1.0 / beta));
}

// ---------------------------------------------------------------------------

double sample_one_sided_stable(double rho, RngState& rng) {
    // G = (A(U) / E)^{(1-rho)/rho},
    // A(u) = sin(rho u)^{rho/(1-rho)} sin((1-rho) u) / sin(u)^{1/(1-rho)}, U ~ U(0, pi).
    const double u = std::numbers::pi * uniform_open(rng);
    const double e = exponential(rng);
    const double q = 1.0 - rho;
    const double log_a = rho / q * std::log(std::sin(rho * u)) + std::log(std::sin(q * u)) - std::log(std::sin(u)) / q;
    return std::exp(q / rho * (log_a - std::log(e)));
}

namespace {

void check_beta(double beta) {
    if (!(beta >= 2.0) || !std::isfinite(beta)) throw ValidationError("limit law sampler needs finite beta >= 2");
}

}  // namespace

double sample_limit_y_power(double beta, RngState& rng) {
    check_beta(beta);
    const double e = exponential(rng);
    const double g = sample_one_sided_stable(1.0 / beta, rng);
    return std::pow(e, beta) * g;
}

double sample_limit_y(double beta, RngState& rng) {
    check_beta(beta);
    const double e = exponential(rng);
    const double g = sample_one_sided_stable(1.0 / beta, rng);
    return e * std::pow(g, 1.0 / beta);
}

double sample_limit_w(double beta, RngState& rng) {
    const double c_beta = 1.0 / std::tgamma(1.0 / beta);
    return std::pow(c_beta, beta) * sample_limit_y_power(beta, rng);
}

LaplaceCheck laplace_check(std::span<const double> w_samples, double beta, double s) {
    if (w_samples.empty()) throw ValidationError("laplace_check needs at least one sample");
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
    for (const double w : w_samples) {
        const double v = std::exp(-s * w);
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return LaplaceCheck{mean, laplace_transform_w(beta, s), std::sqrt(var / static_cast<double>(n)), n};
}

// ---------------------------------------------------------------------------

double VolterraSolution::operator()(double t) const {
    if (!(t >= 0.0 && t <= grid.back())) throw ValidationError("Volterra solution evaluated outside its grid");
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    if (it == grid.end()) return F.back();
    const auto j = static_cast<std::size_t>(it - grid.begin());
    const double w = (t - grid[j - 1]) / (grid[j] - grid[j - 1]);
    return F[j - 1] + w * (F[j] - F[j - 1]);
}

namespace {

std::vector<double> graded_mesh(double t_max, int intervals, double grading) {
    std::vector<double> t(static_cast<std::size_t>(intervals) + 1);
    for (int j = 0; j <= intervals; ++j) t[j] = t_max * std::pow(static_cast<double>(j) / intervals, grading);
    t.back() = t_max;
    return t;
}

// Solves for u = 1 - F on the mesh.
std::vector<double> solve_volterra(double alpha, const std::vector<double>& t) {
    const double a = 1.0 / alpha;
    const std::size_t n_nodes = t.size();
    std::vector<double> u(n_nodes, 0.0);
    std::vector<double> p0(n_nodes);  // z^{1-a} / (1-a) at z = t_n - t_j
    std::vector<double> p1(n_nodes);  // z^{2-a} / (2-a)
    u[0] = 1.0;
    for (std::size_t n = 1; n < n_nodes; ++n) {
        const double tn = t[n];
        for (std::size_t j = 0; j <= n; ++j) {
            const double z = tn - t[j];
            const double zp = z > 0.0 ? std::pow(z, 1.0 - a) : 0.0;
            p0[j] = zp / (1.0 - a);
            p1[j] = zp * z / (2.0 - a);
        }
        // On [t_j, t_{j+1}] write w = t_n - z; u is linear in w.
        double rest = 0.0;
        double self_weight = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double dt = t[j + 1] - t[j];
            const double i0 = p0[j] - p0[j + 1];                 // int z^{-a} dz
            const double i1 = p1[j] - p1[j + 1];                 // int z^{1-a} dz
            const double upper = ((tn - t[j]) * i0 - i1) / dt;  // weight on u_{j+1}
            const double lower = i0 - upper;                     // weight on u_j
            rest += lower * u[j];
            if (j + 1 < n) rest += upper * u[j + 1];
            else self_weight = upper;
        }
        u[n] = (1.0 - rest) / (1.0 + self_weight);
    }
    return u;
}

}  // namespace

VolterraSolution cdf_limit_via_volterra(double alpha, double t_max, int nodes, double tolerance) {
    if (!(alpha > 1.0 && alpha <= 2.0)) throw ValidationError("Volterra limit law needs alpha in (1, 2]");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("Volterra t_max must be positive");
    if (nodes < 100) throw ValidationError("Volterra solver needs at least 100 nodes");
    const int intervals = nodes % 2 == 0 ? nodes : nodes + 1;
    const StabilityIndex index(alpha);
    const double grading = std::clamp(index.beta(), 2.0, 4.0);

    VolterraSolution sol;
    sol.alpha = alpha;
    sol.grid = graded_mesh(t_max, intervals, grading);
    const auto fine = solve_volterra(alpha, sol.grid);
    const auto coarse = solve_volterra(alpha, graded_mesh(t_max, intervals / 2, grading));
    sol.F.resize(fine.size());
    for (std::size_t j = 0; j < fine.size(); ++j) sol.F[j] = std::clamp(1.0 - fine[j], 0.0, 1.0);
    sol.F[0] = 0.0;
    double err = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j) err = std::max(err, std::fabs(fine[2 * j] - coarse[j]));
    sol.refinement_error = err;
    if (err > tolerance) {
        throw ConvergenceError("Volterra solution did not converge: refinement change " + std::to_string(err) +
                                   " exceeds tolerance " + std::to_string(tolerance),
                               err);
    }
    return sol;
}

// ---------------------------------------------------------------------------

MonteCarloLimitCdf::MonteCarloLimitCdf(double beta, std::size_t samples, std::uint64_t seed, unsigned workers)
    : beta_(beta) {
    check_beta(beta);
    if (samples == 0) throw ValidationError("Monte Carlo limit CDF needs samples");
    if (workers == 0) workers = default_workers();
    sorted_.resize(samples);
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    detail::parallel_for(
        blocks, workers,
        [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t b = begin; b < end; ++b) {
                RngState rng = RngState::for_trial(seed, b);
                const std::uint64_t last = std::min<std::uint64_t>(samples, (b + 1) * kBlock);
                for (std::uint64_t i = b * kBlock; i < last; ++i) sorted_[i] = sample_limit_y_power(beta, rng);
            }
        },
        1);
    std::sort(sorted_.begin(), sorted_.end());
}

std::shared_ptr<const MonteCarloLimitCdf> MonteCarloLimitCdf::for_beta(double beta) {
    static std::mutex mutex;
    static std::map<double, std::shared_ptr<const MonteCarloLimitCdf>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[beta];
    if (!slot) slot = std::make_shared<const MonteCarloLimitCdf>(beta, kDefaultSamples, kDefaultSeed);
    return slot;
}

double MonteCarloLimitCdf::cdf_power(double t) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double MonteCarloLimitCdf::cdf_y(double t) const {
    if (t <= 0.0) return 0.0;
    return cdf_power(std::pow(t, beta_));
}

double MonteCarloLimitCdf::cdf_w(double t) const {
    const double c_beta = 1.0 / std::tgamma(1.0 / beta_);
    return cdf_power(t / std::pow(c_beta, beta_));
}

double MonteCarloLimitCdf::quantile_power(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("quantile level must lie in (0, 1)");
    const auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted_.size()))) - 1;
    return sorted_[std::min(k, sorted_.size() - 1)];
}

double MonteCarloLimitCdf::dkw_halfwidth(double delta) const {
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(sorted_.size())));
}

double limit_cdf(const LimitLawSpec& law, double t) {
    law.validate();
    if (!(t >= 0.0)) throw ValidationError("limit_cdf needs t >= 0");
    const double alpha = law.index.alpha();
    if (alpha == 1.0) return cdf_alpha1(t);
    if (alpha == 2.0) {
        switch (law.scale) {
            case LimitScale::GScale: return cdf_e_over_abs_n(std::numbers::sqrt2 * t);
            case LimitScale::RawTau: return cdf_e_over_abs_n(std::sqrt(2.0 * t));
            case LimitScale::SqrtTau: return cdf_e_over_abs_n(t);
        }
    }
    const auto mc = MonteCarloLimitCdf::for_beta(law.index.beta());
    return law.scale == LimitScale::GScale ? mc->cdf_y(t) : mc->cdf_power(t);
}

std::function<double(double)> hitting_transform(const LimitLawSpec& law, const NormalizerG& norm, double epsilon) {
    law.validate();
    if (!(epsilon > 0.0)) throw ValidationError("transform needs epsilon > 0");
    if (norm.alpha() != law.index.alpha()) throw ValidationError("normalizer alpha does not match the limit law");
    const double alpha = law.index.alpha();
    const NormalizerG* g = &norm;
    if (alpha == 1.0) {
        const double scale = law.gamma * epsilon;
        return [g, scale](double s) { return scale * g->value(s); };
    }
    const double beta = law.index.beta();
    const double constant = std::tgamma(1.0 / beta) * law.gamma / beta;
    switch (law.scale) {
        case LimitScale::GScale: {
            const double scale = constant * epsilon;
            return [g, scale](double s) { return scale * g->value(s); };
        }
        case LimitScale::RawTau: {
            const double scale = std::pow(constant, beta) / norm.inverse(1.0 / epsilon);
            return [scale](double s) { return scale * s; };
        }
        case LimitScale::SqrtTau: {
            const double scale = 2.0 * law.escape_prob_x * epsilon;
            return [scale](double s) { return scale * std::sqrt(s); };
        }
    }
    throw ValidationError("unsupported limit scale");
}

}  // namespace stablewalk
