// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stablewalk/errors.hpp"

namespace stablewalk {

double EmpiricalCdf::operator()(double t) const {
    if (n == 0) return 0.0;
    const auto it = std::upper_bound(values.begin(), values.end(), t);
    return static_cast<double>(it - values.begin()) / static_cast<double>(n);
}

double EmpiricalCdf::left_limit(double t) const {
    if (n == 0) return 0.0;
    const auto it = std::lower_bound(values.begin(), values.end(), t);
    return static_cast<double>(it - values.begin()) / static_cast<double>(n);
}

EmpiricalCdf build_ecdf(const SampleSet& samples, const std::function<double(double)>& transform) {
    const std::uint64_t cap = samples.config.cap;
    if (cap > 1) {
        // Probe monotonicity on a log grid over [1, cap].
        constexpr int kProbes = 64;
        const double log_cap = std::log(static_cast<double>(cap));
        double previous = transform(1.0);
        for (int i = 1; i <= kProbes; ++i) {
            const double value = transform(std::min(static_cast<double>(cap), std::exp(log_cap * i / kProbes)));
            if (!(value > previous)) throw ValidationError("ECDF transform is not strictly increasing on [1, cap]");
            previous = value;
        }
    }
    EmpiricalCdf ecdf;
    bool any_censored = false;
    for (const auto& s : samples.samples) {
        if (s.excluded) {
            ++ecdf.excluded_count;
            continue;
        }
        ++ecdf.n;
        if (s.is_hit()) ecdf.values.push_back(transform(static_cast<double>(s.steps())));
        else any_censored = true;
    }
    std::sort(ecdf.values.begin(), ecdf.values.end());
    if (any_censored) ecdf.censor_point = transform(static_cast<double>(cap));
    return ecdf;
}

EmpiricalCdf ecdf_from_values(std::vector<double> values) {
    EmpiricalCdf ecdf;
    ecdf.n = values.size();
    ecdf.values = std::move(values);
    std::sort(ecdf.values.begin(), ecdf.values.end());
    return ecdf;
}

double dkw_halfwidth(std::uint64_t n, double delta) {
    if (n == 0) return 1.0;
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

std::uint64_t censoring_horizon(const std::function<double(double)>& transform, double t_max, std::uint64_t cap) {
    if (cap < 1) throw ValidationError("cap must be at least 1");
    if (!(transform(static_cast<double>(cap)) > t_max)) return cap;
    std::uint64_t lo = 0;  // transform(lo) <= t_max, or lo == 0
    std::uint64_t hi = cap;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (transform(static_cast<double>(mid)) > t_max) hi = mid;
        else lo = mid;
    }
    return hi;
}

namespace {

void check_ks_inputs(const EmpiricalCdf& ecdf, double t_max) {
    if (!(t_max > 0.0)) throw ValidationError("KS truncation point must be positive");
    if (ecdf.censor_point && !(t_max < *ecdf.censor_point))
        throw StatisticalRefusal("KS truncation point reaches the censor point; censoring would contaminate the sup");
    if (ecdf.n == 0) throw StatisticalRefusal("KS distance needs at least one trial");
}

double ks_sup(const EmpiricalCdf& ecdf, const std::function<double(double)>& theory, double t_max, bool left_limits) {
    const double n = static_cast<double>(ecdf.n);
    double sup = 0.0;
    std::size_t i = 0;
    const std::size_t count = ecdf.values.size();
    while (i < count && ecdf.values[i] <= t_max) {
        const double v = ecdf.values[i];
        std::size_t j = i;
        while (j < count && ecdf.values[j] == v) ++j;
        const double f = theory(v);
        sup = std::max(sup, std::fabs(static_cast<double>(j) / n - f));
        if (left_limits) sup = std::max(sup, std::fabs(static_cast<double>(i) / n - f));
        i = j;
    }
    sup = std::max(sup, std::fabs(static_cast<double>(i) / n - theory(t_max)));
    return std::min(sup, 1.0);
}

}  // namespace

KsReport ks_truncated(const EmpiricalCdf& ecdf, const std::function<double(double)>& theory, double t_max,
                      double delta) {
    check_ks_inputs(ecdf, t_max);
    return KsReport{ks_sup(ecdf, theory, t_max, false), t_max, ecdf.n, dkw_halfwidth(ecdf.n, delta), delta};
}

double ks_truncated_two_sided(const EmpiricalCdf& ecdf, const std::function<double(double)>& theory, double t_max) {
    check_ks_inputs(ecdf, t_max);
    return ks_sup(ecdf, theory, t_max, true);
}

SlopeReport loglog_slope(std::span<const SlopePoint> points) {
    struct Level {
        std::vector<double> hits;
        std::uint64_t censored = 0;
    };
    std::map<double, Level> levels;
    SlopeReport report;
    for (const auto& p : points) {
        auto& level = levels[p.log_eps];
        if (p.censored) {
            ++level.censored;
            ++report.n_censored;
        } else {
            level.hits.push_back(p.log_tau);
        }
    }
    if (levels.size() < 2) throw StatisticalRefusal("slope fit needs at least two distinct epsilon values");

    std::vector<std::pair<double, double>> xy;
    for (auto& [log_eps, level] : levels) {
        const std::size_t m = level.hits.size() + level.censored;
        const std::size_t upper = m / 2;  // median uses order statistics (m-1)/2 and m/2
        if (upper >= level.hits.size()) continue;
        std::sort(level.hits.begin(), level.hits.end());
        const double median = m % 2 == 1 ? level.hits[upper] : 0.5 * (level.hits[upper - 1] + level.hits[upper]);
        xy.emplace_back(log_eps, median);
    }
    if (xy.size() < 2) throw StatisticalRefusal("slope fit needs two abscissae with uncensored medians");

    const double k = static_cast<double>(xy.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    report.slope = sxy / sxx;
    const double intercept = my - report.slope * mx;
    double ssr = 0.0;
    for (const auto& [x, y] : xy) {
        const double r = y - (intercept + report.slope * x);
        ssr += r * r;
    }
    report.std_error = xy.size() > 2 ? std::sqrt(ssr / (k - 2.0) / sxx) : 0.0;
    report.n_points = xy.size();
    return report;
}

nlohmann::json to_json(const KsReport& report) {
    return {{"ks", report.ks},
            {"t_max", report.t_max},
            {"n_effective", report.n_effective},
            {"dkw", report.dkw},
            {"delta", report.delta}};
}

nlohmann::json to_json(const SlopeReport& report) {
    return {{"slope", report.slope},
            {"stderr", report.std_error},
            {"n_points", report.n_points},
            {"n_censored", report.n_censored}};
}

}  // namespace stablewalk
