// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stablewalk/errors.hpp"
#include "stablewalk/text.hpp"

namespace stablewalk {

namespace {

using RawConfig = std::map<std::string, std::string, std::less<>>;

const std::map<ExperimentKind, std::string> kKindNames = {
    {ExperimentKind::Simulate, "simulate"}, {ExperimentKind::Analyze, "analyze"},
    {ExperimentKind::LimitLaw, "limit-law"}, {ExperimentKind::Rate, "rate"},
    {ExperimentKind::LocalLimit, "local-limit"}, {ExperimentKind::Report, "report"},
};

int parse_int(std::string_view text, std::string_view what) {
    const auto v = parse_count(text, what);
    if (v > 100'000'000) throw ValidationError(std::string(what) + ": value too large");
    return static_cast<int>(v);
}

ExperimentConfig from_raw(const RawConfig& raw) {
    for (const auto& [key, value] : raw) {
        const auto& keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ValidationError("unknown config key '" + key + "'");
    }
    ExperimentConfig c;
    auto get = [&](const char* key) -> const std::string* {
        const auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("experiment")) c.experiment = parse_experiment_kind(*v);
    if (const auto* v = get("model")) c.model = JumpModel::parse(*v);
    if (const auto* v = get("x")) c.x = parse_double(*v, "x");
    if (const auto* v = get("epsilon")) {
        c.epsilon = parse_double(*v, "epsilon");
        if (!(*c.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    }
    if (const auto* v = get("epsilon_ladder")) {
        for (const auto part : split(*v, ',')) c.epsilon_ladder.push_back(parse_double(part, "epsilon_ladder"));
    }
    if (const auto* v = get("initial")) c.initial = InitialDistribution::parse(*v);
    if (const auto* v = get("cap")) {
        c.cap = parse_count(*v, "cap");
        if (c.cap < 1) throw ValidationError("cap must be at least 1");
    }
    if (const auto* v = get("trials")) c.trials = parse_count(*v, "trials");
    if (const auto* v = get("seed")) c.seed = parse_count(*v, "seed");
    if (const auto* v = get("t_max")) {
        c.t_max = parse_double(*v, "t_max");
        if (!(*c.t_max > 0.0)) throw ValidationError("t_max must be positive");
    }
    if (const auto* v = get("out")) c.out = *v;
    if (const auto* v = get("in")) c.in = *v;
    if (const auto* v = get("law")) c.law = parse_limit_scale(*v);
    if (const auto* v = get("gamma")) c.gamma = parse_double(*v, "gamma");
    if (const auto* v = get("plot")) c.plot = *v;
    if (const auto* v = get("delta")) {
        c.delta = parse_double(*v, "delta");
        if (!(c.delta > 0.0 && c.delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
    }
    if (const auto* v = get("alpha")) {
        c.alpha = parse_double(*v, "alpha");
        (void)StabilityIndex(*c.alpha);
    }
    if (const auto* v = get("nodes")) c.nodes = parse_int(*v, "nodes");
    if (const auto* v = get("grid")) {
        c.grid = parse_int(*v, "grid");
        if (c.grid < 2) throw ValidationError("grid must be at least 2");
    }
    if (const auto* v = get("mc_samples")) c.mc_samples = parse_count(*v, "mc_samples");
    if (const auto* v = get("n")) c.n = parse_count(*v, "n");
    if (const auto* v = get("half_width")) c.half_width = parse_double(*v, "half_width");
    return c;
}

RawConfig to_raw(const ExperimentConfig& c) {
    RawConfig raw;
    if (c.experiment) raw["experiment"] = to_string(*c.experiment);
    if (c.model) raw["model"] = c.model->descriptor();
    raw["x"] = format_double(c.x);
    if (c.epsilon) raw["epsilon"] = format_double(*c.epsilon);
    if (!c.epsilon_ladder.empty()) {
        std::string ladder;
        for (std::size_t i = 0; i < c.epsilon_ladder.size(); ++i) {
            if (i > 0) ladder += ',';
            ladder += format_double(c.epsilon_ladder[i]);
        }
        raw["epsilon_ladder"] = ladder;
    }
    raw["initial"] = c.initial.descriptor();
    raw["cap"] = std::to_string(c.cap);
    if (c.trials) raw["trials"] = std::to_string(*c.trials);
    raw["seed"] = std::to_string(c.seed);
    if (c.t_max) raw["t_max"] = format_double(*c.t_max);
    if (!c.out.empty()) raw["out"] = c.out;
    if (!c.in.empty()) raw["in"] = c.in;
    if (c.law) raw["law"] = to_string(*c.law);
    if (c.gamma) raw["gamma"] = format_double(*c.gamma);
    if (!c.plot.empty()) raw["plot"] = c.plot;
    raw["delta"] = format_double(c.delta);
    if (c.alpha) raw["alpha"] = format_double(*c.alpha);
    raw["nodes"] = std::to_string(c.nodes);
    raw["grid"] = std::to_string(c.grid);
    raw["mc_samples"] = std::to_string(c.mc_samples);
    if (c.n) raw["n"] = std::to_string(*c.n);
    if (c.half_width) raw["half_width"] = format_double(*c.half_width);
    return raw;
}

RawConfig parse_raw(std::string_view text) {
    RawConfig raw;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.empty()) throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
        if (!raw.emplace(key, std::string(value)).second) throw ValidationError("duplicate config key '" + key + "'");
    }
    return raw;
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view text) {
    for (const auto& [kind, name] : kKindNames)
        if (name == text) return kind;
    throw ValidationError("unknown experiment kind '" + std::string(text) + "'");
}

std::string to_string(ExperimentKind kind) { return kKindNames.at(kind); }

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "experiment", "model", "x",   "epsilon", "epsilon_ladder", "initial", "cap", "trials", "seed",
        "t_max", "out",  "in",  "law",   "gamma",   "plot",          "delta",   "alpha", "nodes", "grid",
        "mc_samples", "n", "half_width"};
    return keys;
}

ExperimentConfig parse_config(std::string_view text) { return from_raw(parse_raw(text)); }

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

ExperimentConfig apply_overrides(const ExperimentConfig& base, const std::vector<std::string>& overrides) {
    RawConfig raw = to_raw(base);
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("override '" + item + "' is not key=value");
        raw[std::string(trim(std::string_view(item).substr(0, eq)))] =
            std::string(trim(std::string_view(item).substr(eq + 1)));
    }
    return from_raw(raw);
}

std::string serialize_config(const ExperimentConfig& config) {
    const RawConfig raw = to_raw(config);
    std::string text;
    for (const auto& key : config_keys()) {
        const auto it = raw.find(key);
        if (it != raw.end()) text += key + " = " + it->second + "\n";
    }
    return text;
}

void require_keys(const ExperimentConfig& c) {
    auto need = [](bool present, const char* key) {
        if (!present) throw ValidationError(std::string("missing required config key '") + key + "'");
    };
    need(c.experiment.has_value(), "experiment");
    switch (*c.experiment) {
        case ExperimentKind::Simulate:
            need(c.model.has_value(), "model");
            need(c.epsilon.has_value(), "epsilon");
            need(c.trials.has_value(), "trials");
            break;
        case ExperimentKind::Analyze:
            need(!c.in.empty(), "in");
            need(c.law.has_value(), "law");
            need(c.t_max.has_value(), "t_max");
            break;
        case ExperimentKind::LimitLaw:
            need(c.alpha.has_value() || c.model.has_value(), "alpha");
            need(c.t_max.has_value(), "t_max");
            break;
        case ExperimentKind::Rate:
            need(c.model.has_value(), "model");
            need(!c.epsilon_ladder.empty(), "epsilon_ladder");
            need(c.trials.has_value(), "trials");
            break;
        case ExperimentKind::LocalLimit:
            need(c.model.has_value(), "model");
            need(c.n.has_value(), "n");
            need(c.half_width.has_value(), "half_width");
            need(c.trials.has_value(), "trials");
            break;
        case ExperimentKind::Report:
            need(c.model.has_value(), "model");
            break;
    }
}

WalkConfig to_walk_config(const ExperimentConfig& c) {
    WalkConfig w;
    if (c.model) w.model = *c.model;
    w.x = c.x;
    if (c.epsilon) w.epsilon = *c.epsilon;
    w.initial = c.initial;
    w.cap = c.cap;
    w.trials = c.trials.value_or(0);
    w.master_seed = c.seed;
    w.validate();
    return w;
}

}  // namespace stablewalk
