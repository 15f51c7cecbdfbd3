// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment drivers behind the CLI subcommands. Each driver returns its
// result as a value; run_experiment() additionally writes the output files
// named in the config.
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "json.hpp"

#include "stablewalk/config.hpp"
#include "stablewalk/stats.hpp"

namespace stablewalk {

/// Process exit codes of the CLI.
enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitIo = 3, kExitRefusal = 4 };

SampleSet cmd_simulate(const ExperimentConfig& config, unsigned workers = 0);

struct AnalyzeResult {
    KsReport report;
    LimitLawSpec law;
    struct PlotRow {
        double t, ecdf, theory;
    };
    std::vector<PlotRow> plot;
};

/// KS comparison of a sample set with the limit law in the chosen scale.
/// `expected_model`/`expected_gamma`, when given, must agree with the set.
AnalyzeResult cmd_analyze(const SampleSet& samples, LimitScale scale, double t_max, double delta = 1e-3,
                          const std::optional<JumpModel>& expected_model = std::nullopt,
                          std::optional<double> expected_gamma = std::nullopt, int plot_points = 200);

struct LimitLawTable {
    double alpha;
    LimitScale scale;
    std::vector<double> t;
    std::vector<double> reference;    // closed form where one exists, else Volterra
    std::vector<double> volterra;     // empty for alpha = 1
    std::vector<double> monte_carlo;  // empty for alpha = 1
    double volterra_mc_sup = 0.0;
    double volterra_refinement = 0.0;
};

/// Limit CDF on an even grid of `grid` points over [0, t_max], by every
/// available route. Scale GScale/RawTau selects the normalization.
LimitLawTable cmd_limit_law(double alpha, LimitScale scale, double t_max, int grid, int nodes,
                            std::size_t mc_samples, std::uint64_t seed);

struct RateResult {
    SlopeInput input;
    SlopeReport report;
};

RateResult cmd_rate(const ExperimentConfig& config, unsigned workers = 0);

LocalLimitEstimate cmd_local_limit(const ExperimentConfig& config, unsigned workers = 0);

/// Model diagnostics: alpha, beta, f_X(0), gamma, P(Omega*_x), Cramer margin, G asymptotics.
nlohmann::json cmd_report(const ExperimentConfig& config);

nlohmann::json to_json(const LocalLimitEstimate& estimate);

/// Runs the experiment named by config.experiment and writes its outputs
/// (stdout when `out` is empty). Returns the process exit code; error
/// messages go to `err`.
int run_experiment(const ExperimentConfig& config, std::ostream& stdout_stream, std::ostream& err);

}  // namespace stablewalk
