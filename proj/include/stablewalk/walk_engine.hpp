// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine for the walk S'_n = S'_0 + X_1 + ... + X_n and its
// capped hitting times of (x - eps, x + eps).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stablewalk/jump_models.hpp"
#include "stablewalk/rng.hpp"

namespace stablewalk {

struct PointMass {
    double value = 0.0;
    friend bool operator==(const PointMass&, const PointMass&) = default;
};
struct UniformInterval {
    double a = -1.0;
    double b = 1.0;
    friend bool operator==(const UniformInterval&, const UniformInterval&) = default;
};
struct GaussianShift {
    double mean = 0.0;
    double sd = 1.0;
    friend bool operator==(const GaussianShift&, const GaussianShift&) = default;
};

/// Law of the starting point S'_0.
class InitialDistribution {
  public:
    using Kind = std::variant<PointMass, UniformInterval, GaussianShift>;

    InitialDistribution() = default;
    static InitialDistribution point(double v);
    static InitialDistribution uniform(double a, double b);
    static InitialDistribution gaussian(double mean, double sd);

    /// "point:v" | "uniform:a:b" | "gaussian:mean:sd"
    static InitialDistribution parse(std::string_view descriptor);
    std::string descriptor() const;

    const Kind& kind() const noexcept { return kind_; }
    double sample(RngState& rng) const;

    friend bool operator==(const InitialDistribution&, const InitialDistribution&) = default;

  private:
    explicit InitialDistribution(Kind kind) : kind_(kind) {}
    Kind kind_{PointMass{0.0}};
};

struct WalkConfig {
    JumpModel model = JumpModel::gaussian();
    double x = 0.0;
    double epsilon = 0.1;
    InitialDistribution initial;
    std::uint64_t cap = 100'000'000;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;

    /// Throws ValidationError on eps <= 0, cap == 0 or non-finite x.
    void validate() const;
    /// Exact hits S'_n == x are tracked only where they are bit-exactly
    /// detectable: zero-atom mixtures started from a point mass at x.
    bool detects_exact_hits() const;
};

struct Hit {
    std::uint64_t steps;
    friend bool operator==(const Hit&, const Hit&) = default;
};
struct Censored {
    std::uint64_t cap;
    friend bool operator==(const Censored&, const Censored&) = default;
};

struct HittingSample {
    std::variant<Hit, Censored> outcome;
    /// The trial left Omega*_x: S'_n == x exactly at or before the eps-hit.
    bool excluded = false;

    bool is_hit() const noexcept { return std::holds_alternative<Hit>(outcome); }
    /// Hit steps, or the cap for censored samples.
    std::uint64_t steps() const noexcept;

    friend bool operator==(const HittingSample&, const HittingSample&) = default;
};

struct SampleSet {
    WalkConfig config;
    std::vector<HittingSample> samples;
    std::string seed_derivation = kSeedDerivationTag;

    std::uint64_t censored_count() const;
    std::uint64_t excluded_count() const;
};

/// State of one trial. Can be advanced in stages with identical results to
/// a single uninterrupted run.
struct WalkerState {
    RngState rng;
    double position = 0.0;
    std::uint64_t steps = 0;
    bool excluded = false;
    bool hit = false;

    static WalkerState start(const WalkConfig& config, std::uint64_t trial_index);
};

/// Advances until the eps-hit or until `horizon` total steps.
void advance_walker(const WalkConfig& config, WalkerState& state, std::uint64_t horizon);

HittingSample hitting_time(const WalkConfig& config, std::uint64_t trial_index);

/// Worker count from STABLEWALK_WORKERS, else hardware concurrency.
unsigned default_workers();

/// All trials of the config; identical output for every worker count.
SampleSet run_batch(const WalkConfig& config, unsigned workers = 0);

struct SlopePoint {
    double log_eps;
    double log_tau;  // lower bound when censored
    bool censored;
};

struct SlopeInput {
    std::vector<SlopePoint> points;
    std::vector<double> eps_ladder;
    std::uint64_t cap = 0;
    /// Trials outside Omega*_x, dropped before fitting.
    std::uint64_t excluded = 0;
};

struct RateOptions {
    /// Stop each eps level once more than half of its trials have hit. The
    /// per-level median is then identical to the one of a full-cap run;
    /// unfinished trials are reported as censored at the horizon reached.
    bool stop_at_median = true;
    std::uint64_t first_horizon = 1u << 16;
    unsigned workers = 0;
};

SlopeInput rate_experiment(const JumpModel& model, double x, std::span<const double> eps_ladder, std::uint64_t cap,
                           std::uint64_t trials_per_eps, std::uint64_t master_seed, const RateOptions& options = {});

struct LocalLimitEstimate {
    double estimate;
    double std_error;
    double theory;  // 2 * half_width * f_X(0)
    std::uint64_t hits;
    std::uint64_t trials;
};

/// Monte Carlo estimate of P(|S_n / A_n| < half_width).
LocalLimitEstimate local_limit_probe(const JumpModel& model, std::uint64_t n, double half_width, std::uint64_t trials,
                                     std::uint64_t master_seed, unsigned workers = 0);

/// CSV `trial,outcome,steps,excluded` with `#` metadata lines echoing the config.
void write_sample_csv(std::ostream& out, const SampleSet& set);
SampleSet read_sample_csv(std::istream& in);

}  // namespace stablewalk
