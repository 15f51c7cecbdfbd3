// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Censoring-aware empirical distributions and the two acceptance
// statistics: truncated Kolmogorov-Smirnov distance and log-log slope.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "stablewalk/walk_engine.hpp"

namespace stablewalk {

/// ECDF of transformed hit times over all non-excluded trials. Censored
/// trials count in the denominator but carry no value, so the ECDF is only
/// meaningful strictly below censor_point.
struct EmpiricalCdf {
    std::vector<double> values;  // sorted
    std::uint64_t n = 0;         // non-excluded trials (hits + censored)
    std::optional<double> censor_point;
    std::uint64_t excluded_count = 0;

    /// Fraction of the n trials with value <= t.
    double operator()(double t) const;
    /// Fraction with value < t.
    double left_limit(double t) const;
};

EmpiricalCdf build_ecdf(const SampleSet& samples, const std::function<double(double)>& transform);

/// Builds an ECDF straight from uncensored values (e.g. limit-law draws).
EmpiricalCdf ecdf_from_values(std::vector<double> values);

double dkw_halfwidth(std::uint64_t n, double delta);

/// Smallest step count h in [1, cap] with transform(h) > t_max, or cap when
/// there is none. Walks stopped at h give the same truncated KS distance on
/// (0, t_max] as walks stopped at any cap >= h.
std::uint64_t censoring_horizon(const std::function<double(double)>& transform, double t_max, std::uint64_t cap);

struct KsReport {
    double ks = 0.0;
    double t_max = 0.0;
    std::uint64_t n_effective = 0;
    double dkw = 0.0;
    double delta = 1e-3;
};

/// sup of |ECDF - theory| over the jump points <= t_max and t_max itself,
/// with the right-continuous ECDF. Refuses when t_max reaches the censor point.
KsReport ks_truncated(const EmpiricalCdf& ecdf, const std::function<double(double)>& theory, double t_max,
                      double delta = 1e-3);

/// The same sup taken on both sides of every jump, i.e. also against the
/// ECDF's left limits. For integer hitting times this includes the gap below
/// the first lattice point. Same preconditions as ks_truncated.
double ks_truncated_two_sided(const EmpiricalCdf& ecdf, const std::function<double(double)>& theory, double t_max);

struct SlopeReport {
    double slope = 0.0;
    double std_error = 0.0;
    std::uint64_t n_points = 0;    // abscissae used in the fit
    std::uint64_t n_censored = 0;  // censored observations seen
};

/// OLS of the per-abscissa median of log tau on log eps. Censored points
/// rank above every hit when taking the median and never enter it as values;
/// an abscissa whose median falls on a censored point is dropped.
SlopeReport loglog_slope(std::span<const SlopePoint> points);

nlohmann::json to_json(const KsReport& report);
nlohmann::json to_json(const SlopeReport& report);

}  // namespace stablewalk
