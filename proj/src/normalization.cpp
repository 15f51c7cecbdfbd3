// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "stablewalk/errors.hpp"

namespace stablewalk {

NormalizerG::NormalizerG(double alpha) : index_(alpha), s_(1.0 / alpha) {
    table_.resize(static_cast<std::size_t>(kExactThreshold) + 1);
    table_[0] = 0.0;
    // Neumaier summation keeps the tabulated prefix sums at full precision.
    double sum = 0.0;
    double comp = 0.0;
    for (std::int64_t k = 1; k <= kExactThreshold; ++k) {
        const double term = increment(k);
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term)) comp += (sum - t) + term;
        else comp += (term - t) + sum;
        sum = t;
        table_[static_cast<std::size_t>(k)] = sum + comp;
    }
    max_value_ = value(kMaxArgument);
}

std::shared_ptr<const NormalizerG> NormalizerG::for_alpha(double alpha) {
    static std::mutex mutex;
    static std::map<double, std::shared_ptr<const NormalizerG>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[alpha];
    if (!slot) slot = std::make_shared<const NormalizerG>(alpha);
    return slot;
}

double NormalizerG::increment(std::int64_t n) const noexcept {
    const auto k = static_cast<double>(n);
    if (s_ == 1.0) return 1.0 / k;
    if (s_ == 0.5) return 1.0 / std::sqrt(k);
    return std::pow(k, -s_);
}

// sum_{k=a+1}^{b} k^{-s} by Euler-Maclaurin, a >= kExactThreshold. The
// remainder after the f''' term is below 1e-30 at this threshold.
double NormalizerG::tail_sum(double a, double b) const {
    const double s = s_;
    const double log_ratio = std::log1p((b - a) / a);
    double integral = 0.0;
    if (s == 1.0) {
        integral = log_ratio;
    } else {
        integral = std::pow(a, 1.0 - s) * std::expm1((1.0 - s) * log_ratio) / (1.0 - s);
    }
    auto f = [s](double k) { return std::pow(k, -s); };
    auto d1 = [s](double k) { return -s * std::pow(k, -s - 1.0); };
    auto d3 = [s](double k) { return -s * (s + 1.0) * (s + 2.0) * std::pow(k, -s - 3.0); };
    return integral + 0.5 * (f(b) - f(a)) + (d1(b) - d1(a)) / 12.0 - (d3(b) - d3(a)) / 720.0;
}

double NormalizerG::at(std::int64_t n) const {
    if (n <= kExactThreshold) return table_[static_cast<std::size_t>(n)];
    return table_.back() + tail_sum(static_cast<double>(kExactThreshold), static_cast<double>(n));
}

double NormalizerG::value(double u) const {
    if (!(u >= 0.0 && u <= kMaxArgument))
        throw ValidationError("G argument outside supported range [0, 1e12]");
    const double floor_u = std::floor(u);
    const auto n = static_cast<std::int64_t>(floor_u);
    const double frac = u - floor_u;
    if (frac == 0.0) return at(n);
    return at(n) + frac * increment(n + 1);
}

std::int64_t NormalizerG::inverse_floor(double y) const {
    // Largest integer n with G(n) <= y, for y beyond the tabulated range.
    const double seed = index_.beta_infinite() ? std::exp(y) : std::pow(y / index_.beta(), index_.beta());
    const auto n_max = static_cast<std::int64_t>(kMaxArgument);
    std::int64_t lo = std::clamp(static_cast<std::int64_t>(seed / 2.0), kExactThreshold, n_max);
    while (lo > kExactThreshold && at(lo) > y) lo = std::max(kExactThreshold, lo / 2);
    std::int64_t hi = std::clamp(static_cast<std::int64_t>(seed * 2.0) + 1, lo + 1, n_max);
    while (hi < n_max && at(hi) <= y) hi = std::min(n_max, hi * 2);
    if (at(hi) <= y) return hi;
    // Invariant: G(lo) <= y < G(hi).
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (at(mid) <= y) lo = mid;
        else hi = mid;
    }
    return lo;
}

double NormalizerG::inverse(double y) const {
    if (!(y >= 0.0 && y <= max_value_))
        throw ValidationError("G inverse argument outside supported range [0, G(1e12)]");
    std::int64_t n = 0;
    if (y < table_.back()) {
        const auto it = std::upper_bound(table_.begin(), table_.end(), y);
        n = static_cast<std::int64_t>(it - table_.begin()) - 1;
    } else {
        n = inverse_floor(y);
    }
    const double base = at(n);
    if (y == base || n >= static_cast<std::int64_t>(kMaxArgument)) return static_cast<double>(n);
    return static_cast<double>(n) + (y - base) / increment(n + 1);
}

double g_value(const NormalizerG& norm, double u) { return norm.value(u); }

double g_inverse(const NormalizerG& norm, double y) { return norm.inverse(y); }

std::vector<GAsymptoticsRow> g_asymptotics_report(const NormalizerG& norm, std::span<const std::int64_t> n_grid) {
    std::vector<GAsymptoticsRow> rows;
    rows.reserve(n_grid.size());
    const NormingSequence a(norm.alpha());
    for (const std::int64_t n : n_grid) {
        if (n < 1) throw ValidationError("asymptotics grid entries must be >= 1");
        GAsymptoticsRow row{};
        row.n = n;
        row.n_over_a = static_cast<double>(n) / a(static_cast<double>(n));
        const double g = norm.at(n);
        row.g_over_beta = norm.index().beta_infinite() ? g : g / norm.index().beta();
        row.ratio = row.n_over_a / row.g_over_beta;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace stablewalk
