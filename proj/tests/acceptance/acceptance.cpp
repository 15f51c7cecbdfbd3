// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance run. Every regime is read from the shipped configs;
// one PASS/FAIL line per criterion, non-zero exit if any fails.
//
// KS runs simulate only up to the censoring horizon of t_max, i.e. the first
// step whose normalized value exceeds t_max. Samples below it are identical
// to those of the nominal-cap run, so the truncated KS distance is the same.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stablewalk/config.hpp"
#include "stablewalk/experiments.hpp"
#include "stablewalk/limit_laws.hpp"
#include "stablewalk/normalization.hpp"
#include "stablewalk/stats.hpp"
#include "stablewalk/walk_engine.hpp"

using namespace stablewalk;
using nlohmann::json;

namespace {

std::string g_config_dir = STABLEWALK_CONFIG_DIR;

ExperimentConfig config(const std::string& name) { return load_config(g_config_dir + "/" + name); }

struct Verdict {
    bool pass = true;
    std::vector<std::string> parts;
    json detail = json::object();

    void check(bool ok, const std::string& text) {
        pass = pass && ok;
        parts.push_back(text + (ok ? "" : " [fail]"));
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct KsRun {
    KsReport report;
    double two_sided;
    double excluded_fraction;
    std::uint64_t horizon;
    double t_max;
    double seconds;
};

// t_max given explicitly, or as a fraction of the normalized nominal cap.
KsRun ks_run(const std::string& sim_name, LimitScale scale, std::optional<double> t_max_fixed, double cap_fraction,
             const std::function<double(double)>& theory_override = {}) {
    const auto start = std::chrono::steady_clock::now();
    WalkConfig wc = to_walk_config(config(sim_name));
    const auto law = LimitLawSpec::for_model(wc.model, wc.x, scale);
    const auto norm = NormalizerG::for_alpha(wc.model.alpha());
    const auto transform = hitting_transform(law, *norm, wc.epsilon);
    const double t_max = t_max_fixed ? *t_max_fixed : cap_fraction * transform(static_cast<double>(wc.cap));
    wc.cap = censoring_horizon(transform, t_max, wc.cap);
    const SampleSet set = run_batch(wc);
    const EmpiricalCdf ecdf = build_ecdf(set, transform);
    const auto theory = theory_override ? theory_override : [law](double t) { return limit_cdf(law, t); };
    KsRun run{ks_truncated(ecdf, theory, t_max), ks_truncated_two_sided(ecdf, theory, t_max), 0.0, wc.cap, t_max, 0.0};
    run.excluded_fraction = static_cast<double>(set.excluded_count()) / static_cast<double>(set.samples.size());
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

void record(Verdict& v, const std::string& key, const KsRun& r, double threshold) {
    v.check(r.report.ks <= threshold, key + " KS=" + fmt(r.report.ks) + " <= " + fmt(threshold) +
                                          " (two-sided " + fmt(r.two_sided) + ")");
    v.detail[key] = {{"ks", r.report.ks},          {"ks_two_sided", r.two_sided}, {"threshold", threshold},
                     {"t_max", r.t_max},           {"n_effective", r.report.n_effective},
                     {"dkw", r.report.dkw},        {"horizon", r.horizon},
                     {"seconds", r.seconds}};
}

Verdict criterion1() {
    Verdict v;
    record(v, "cauchy", ks_run("c1_cauchy.simulate.conf", LimitScale::GScale, std::nullopt, 0.8), 0.03);
    return v;
}

Verdict criterion2() {
    Verdict v;
    const auto r = ks_run("c2_mixture.simulate.conf", LimitScale::GScale, std::nullopt, 0.8);
    record(v, "mixture", r, 0.03);
    v.check(std::fabs(r.excluded_fraction - 0.5) <= 0.005, "excluded=" + fmt(r.excluded_fraction) + " in 0.5+-0.005");
    v.detail["excluded_fraction"] = r.excluded_fraction;
    return v;
}

Verdict criterion3() {
    Verdict v;
    record(v, "gaussian", ks_run("c3_gaussian.simulate.conf", LimitScale::SqrtTau, 2.0, 0.0), 0.03);
    return v;
}

Verdict criterion4() {
    Verdict v;
    record(v, "cauchy_uniform", ks_run("c4_cauchy_uniform.simulate.conf", LimitScale::GScale, std::nullopt, 0.8), 0.03);
    record(v, "gaussian_uniform", ks_run("c4_gaussian_uniform.simulate.conf", LimitScale::SqrtTau, 2.0, 0.0), 0.03);
    return v;
}

Verdict criterion5() {
    Verdict v;
    record(v, "gaussian_x1", ks_run("c5_gaussian_x1.simulate.conf", LimitScale::SqrtTau, 2.0, 0.0), 0.04);
    return v;
}

Verdict criterion6() {
    Verdict v;
    const auto mc = MonteCarloLimitCdf::for_beta(3.0);
    const double q90 = mc->quantile_power(0.9);
    const auto r = ks_run("c6_stable15.simulate.conf", LimitScale::RawTau, q90, 0.0,
                          [mc](double t) { return mc->cdf_power(t); });
    record(v, "stable15", r, 0.04);
    v.detail["q90"] = q90;
    v.detail["mc_samples"] = mc->size();
    return v;
}

Verdict criterion7() {
    Verdict v;
    const struct {
        const char* name;
        double target;
        double tol;
    } cases[] = {{"c7_rate_gaussian.conf", -2.0, 0.2}, {"c7_rate_stable15.conf", -3.0, 0.4}};
    for (const auto& c : cases) {
        const auto start = std::chrono::steady_clock::now();
        const auto cfg = config(c.name);
        const auto result = cmd_rate(cfg);
        const double slope = result.report.slope;
        const std::string key = cfg.model->descriptor();
        v.check(std::fabs(slope - c.target) <= c.tol,
                key + " slope=" + fmt(slope) + " in " + fmt(c.target) + "+-" + fmt(c.tol));
        v.detail[key] = to_json(result.report);
        v.detail[key]["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return v;
}

Verdict criterion8() {
    Verdict v;
    for (const char* name : {"c8_limit_law_alpha15.conf", "c8_limit_law_alpha2.conf"}) {
        const auto cfg = config(name);
        const auto table = cmd_limit_law(*cfg.alpha, *cfg.law, *cfg.t_max, cfg.grid, cfg.nodes, cfg.mc_samples,
                                         cfg.seed);
        const std::string key = "alpha=" + fmt(*cfg.alpha);
        v.check(table.volterra_mc_sup < 0.01, key + " sup|volterra-mc|=" + fmt(table.volterra_mc_sup) + " < 0.01");
        v.detail[key] = {{"volterra_mc_sup", table.volterra_mc_sup},
                         {"volterra_refinement", table.volterra_refinement}};
    }
    constexpr std::size_t kLaplaceSamples = 1'000'000;
    for (const double beta : {2.0, 3.0}) {
        RngState rng(0x1a91ace0 + static_cast<std::uint64_t>(beta));
        std::vector<double> w(kLaplaceSamples);
        for (auto& x : w) x = sample_limit_w(beta, rng);
        for (const double s : {0.25, 1.0, 4.0}) {
            const auto c = laplace_check(w, beta, s);
            const double gap = std::fabs(c.empirical - c.theoretical);
            v.check(gap < 4.0 * c.std_error,
                    "laplace(beta=" + fmt(beta) + ",s=" + fmt(s) + ") gap=" + fmt(gap, 3) + " < " +
                        fmt(4.0 * c.std_error, 3));
            v.detail["laplace"].push_back(
                {{"beta", beta}, {"s", s}, {"empirical", c.empirical}, {"theory", c.theoretical}, {"se", c.std_error}});
        }
    }
    {
        RngState rng(0x6b616e74);
        std::vector<double> g(1'000'000);
        for (auto& x : g) x = sample_one_sided_stable(0.5, rng);
        // G_{1/2} has the law of 1 / (2 N^2): P(. <= t) = erfc(1 / (2 sqrt t)).
        const double top = *std::max_element(g.begin(), g.end());
        const auto report = ks_truncated(ecdf_from_values(g), [](double t) { return std::erfc(0.5 / std::sqrt(t)); }, top);
        v.check(report.ks < 0.005, "kanter KS=" + fmt(report.ks) + " < 0.005");
        v.detail["kanter_ks"] = report.ks;
    }
    return v;
}

Verdict criterion9() {
    Verdict v;
    const struct {
        const char* name;
        double target;
    } cases[] = {{"c9_local_gaussian.conf", 0.039878}, {"c9_local_cauchy.conf", 0.031831}};
    for (const auto& c : cases) {
        const auto cfg = config(c.name);
        const auto e = cmd_local_limit(cfg);
        const double se = std::sqrt(c.target * (1.0 - c.target) / static_cast<double>(e.trials));
        const std::string key = cfg.model->descriptor() + " n=" + std::to_string(*cfg.n);
        v.check(std::fabs(e.estimate - c.target) <= 3.0 * se,
                key + " p=" + fmt(e.estimate, 5) + " vs " + fmt(c.target, 5) + "+-" + fmt(3.0 * se, 2));
        v.detail[key] = to_json(e);
        v.detail[key]["target"] = c.target;
    }
    return v;
}

Verdict criterion10() {
    Verdict v;
    const WalkConfig wc = to_walk_config(config("c10_reproducibility.simulate.conf"));
    std::string reference;
    for (const unsigned workers : {1u, 2u, 8u}) {
        std::ostringstream out;
        write_sample_csv(out, run_batch(wc, workers));
        if (workers == 1) reference = out.str();
        v.check(out.str() == reference, "workers=" + std::to_string(workers) + (out.str() == reference ? " identical" : " differs"));
    }
    v.detail["bytes"] = reference.size();
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stablewalk acceptance run"};
    std::vector<int> only;
    std::string report_path;
    app.add_option("--only", only, "Run only these criteria (1-10)");
    app.add_option("--config-dir", g_config_dir, "Directory with the shipped configs");
    app.add_option("--report", report_path, "Write a JSON summary here");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    const std::set<int> selected(only.begin(), only.end());
    json summary = json::object();
    bool all_pass = true;
    for (const auto& [id, run] : criteria) {
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v.check(false, std::string("error: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string line = (v.pass ? "PASS" : "FAIL") + std::string(" criterion ") + std::to_string(id) + ":";
        for (const auto& p : v.parts) line += " " + p + ";";
        line += " (" + fmt(seconds, 3) + " s)";
        std::cout << line << std::endl;
        v.detail["pass"] = v.pass;
        v.detail["seconds"] = seconds;
        summary[std::to_string(id)] = v.detail;
        all_pass = all_pass && v.pass;
    }
    if (!report_path.empty()) std::ofstream(report_path) << summary.dump(2) << '\n';
    return all_pass ? 0 : 1;
}
