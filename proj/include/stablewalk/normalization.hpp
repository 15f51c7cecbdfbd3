// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// The hitting-time normalizer G: G(0) = 0, G(n) = sum_{k<=n} 1/A_k with
// A_k = k^{1/alpha}, affinely interpolated between integers.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "stablewalk/jump_models.hpp"

namespace stablewalk {

class NormalizerG {
  public:
    /// Largest argument accepted by value().
    static constexpr double kMaxArgument = 1e12;
    /// Integers up to this bound are summed exactly and tabulated.
    static constexpr std::int64_t kExactThreshold = 1'000'000;

    explicit NormalizerG(double alpha);

    /// Shares one immutable table per alpha across the process.
    static std::shared_ptr<const NormalizerG> for_alpha(double alpha);

    const StabilityIndex& index() const noexcept { return index_; }
    double alpha() const noexcept { return index_.alpha(); }

    /// G(u) for 0 <= u <= kMaxArgument.
    double value(double u) const;
    /// G at an integer n.
    double at(std::int64_t n) const;
    /// The unique u with G(u) = y, for 0 <= y <= G(kMaxArgument).
    double inverse(double y) const;
    /// 1/A_n.
    double increment(std::int64_t n) const noexcept;

    double max_value() const noexcept { return max_value_; }

  private:
    double tail_sum(double a, double b) const;
    std::int64_t inverse_floor(double y) const;

    StabilityIndex index_;
    double s_;  // the exponent 1/alpha in 1/A_k = k^{-s}
    std::vector<double> table_;
    double max_value_ = 0.0;
};

double g_value(const NormalizerG& norm, double u);
double g_inverse(const NormalizerG& norm, double y);

struct GAsymptoticsRow {
    std::int64_t n;
    double n_over_a;     // n / A_n
    double g_over_beta;  // G(n) / beta, or G(n) itself when alpha == 1
    double ratio;        // n_over_a / g_over_beta: -> 1 (alpha > 1) or -> 0 (alpha == 1)
};

std::vector<GAsymptoticsRow> g_asymptotics_report(const NormalizerG& norm, std::span<const std::int64_t> n_grid);

}  // namespace stablewalk
