// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Plain `key = value` experiment configs. '#' starts a comment. Unknown keys
// and duplicate keys are rejected before anything runs.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablewalk/jump_models.hpp"
#include "stablewalk/limit_laws.hpp"
#include "stablewalk/walk_engine.hpp"

namespace stablewalk {

enum class ExperimentKind { Simulate, Analyze, LimitLaw, Rate, LocalLimit, Report };

ExperimentKind parse_experiment_kind(std::string_view text);
std::string to_string(ExperimentKind kind);

struct ExperimentConfig {
    std::optional<ExperimentKind> experiment;
    std::optional<JumpModel> model;
    double x = 0.0;
    std::optional<double> epsilon;
    std::vector<double> epsilon_ladder;
    InitialDistribution initial;
    std::uint64_t cap = 100'000'000;
    std::optional<std::uint64_t> trials;
    std::uint64_t seed = 0;
    std::optional<double> t_max;
    std::string out;

    // analyze
    std::string in;
    std::optional<LimitScale> law;
    std::optional<double> gamma;
    std::string plot;
    double delta = 1e-3;
    // limit-law
    std::optional<double> alpha;
    int nodes = 2000;
    int grid = 101;
    std::uint64_t mc_samples = 10'000'000;
    // local-limit
    std::optional<std::uint64_t> n;
    std::optional<double> half_width;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Every recognised key, in canonical order.
const std::vector<std::string>& config_keys();

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
/// Applies "key=value" overrides on top of a parsed config.
ExperimentConfig apply_overrides(const ExperimentConfig& base, const std::vector<std::string>& overrides);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Key-presence checks for the chosen experiment; the message names the key.
void require_keys(const ExperimentConfig& config);

WalkConfig to_walk_config(const ExperimentConfig& config);

}  // namespace stablewalk
