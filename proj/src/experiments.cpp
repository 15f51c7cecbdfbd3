// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "stablewalk/errors.hpp"
#include "stablewalk/normalization.hpp"
#include "stablewalk/text.hpp"

namespace stablewalk {

SampleSet cmd_simulate(const ExperimentConfig& config, unsigned workers) {
    return run_batch(to_walk_config(config), workers);
}

AnalyzeResult cmd_analyze(const SampleSet& samples, LimitScale scale, double t_max, double delta,
                          const std::optional<JumpModel>& expected_model, std::optional<double> expected_gamma,
                          int plot_points) {
    const JumpModel& model = samples.config.model;
    if (expected_model && !(*expected_model == model)) {
        throw ValidationError("model mismatch: config names '" + expected_model->descriptor() +
                              "' but the sample set was generated with '" + model.descriptor() + "'");
    }
    AnalyzeResult result{{}, LimitLawSpec::for_model(model, samples.config.x, scale), {}};
    if (expected_gamma && std::fabs(*expected_gamma - result.law.gamma) > 1e-9 * result.law.gamma) {
        throw ValidationError("gamma mismatch: config gives " + format_double(*expected_gamma) +
                              " but the sample set's model implies " + format_double(result.law.gamma));
    }
    if (samples.samples.empty()) throw StatisticalRefusal("sample set is empty");
    const auto norm = NormalizerG::for_alpha(model.alpha());
    const auto transform = hitting_transform(result.law, *norm, samples.config.epsilon);
    const EmpiricalCdf ecdf = build_ecdf(samples, transform);
    const LimitLawSpec law = result.law;
    const auto theory = [law](double t) { return limit_cdf(law, t); };
    result.report = ks_truncated(ecdf, theory, t_max, delta);
    for (int k = 1; k <= plot_points; ++k) {
        const double t = t_max * k / plot_points;
        result.plot.push_back({t, ecdf(t), theory(t)});
    }
    return result;
}

LimitLawTable cmd_limit_law(double alpha, LimitScale scale, double t_max, int grid, int nodes,
                            std::size_t mc_samples, std::uint64_t seed) {
    if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");
    if (grid < 2) throw ValidationError("grid must have at least 2 points");
    const StabilityIndex index(alpha);
    LimitLawSpec law{index, scale, 1.0, 1.0};
    law.validate();

    LimitLawTable table{alpha, scale, {}, {}, {}, {}, 0.0, 0.0};
    for (int k = 0; k < grid; ++k) table.t.push_back(t_max * k / (grid - 1));
    if (alpha == 1.0) {
        for (const double t : table.t) table.reference.push_back(cdf_alpha1(t));
        return table;
    }

    const double beta = index.beta();
    const double c_pow = std::pow(1.0 / std::tgamma(1.0 / beta), beta);
    // Map a point of the requested scale onto the W scale of the integral equation.
    auto to_w = [&](double t) {
        switch (scale) {
            case LimitScale::GScale: return c_pow * std::pow(t, beta);
            case LimitScale::RawTau: return c_pow * t;
            case LimitScale::SqrtTau: return c_pow * 0.5 * t * t;
        }
        return 0.0;
    };
    const auto volterra = cdf_limit_via_volterra(alpha, to_w(t_max), nodes);
    table.volterra_refinement = volterra.refinement_error;
    const MonteCarloLimitCdf mc(beta, mc_samples, seed);
    for (const double t : table.t) {
        const double w = to_w(t);
        table.volterra.push_back(volterra(w));
        table.monte_carlo.push_back(mc.cdf_w(w));
        table.reference.push_back(alpha == 2.0 ? limit_cdf(law, t) : table.volterra.back());
        table.volterra_mc_sup = std::max(table.volterra_mc_sup, std::fabs(table.volterra.back() - table.monte_carlo.back()));
    }
    return table;
}

RateResult cmd_rate(const ExperimentConfig& config, unsigned workers) {
    if (!config.model) throw ValidationError("missing required config key 'model'");
    RateOptions options;
    options.workers = workers;
    RateResult result;
    result.input = rate_experiment(*config.model, config.x, config.epsilon_ladder, config.cap,
                                   config.trials.value_or(0), config.seed, options);
    result.report = loglog_slope(result.input.points);
    return result;
}

LocalLimitEstimate cmd_local_limit(const ExperimentConfig& config, unsigned workers) {
    if (!config.model) throw ValidationError("missing required config key 'model'");
    return local_limit_probe(*config.model, config.n.value_or(0), config.half_width.value_or(-1.0),
                             config.trials.value_or(0), config.seed, workers);
}

nlohmann::json cmd_report(const ExperimentConfig& config) {
    if (!config.model) throw ValidationError("missing required config key 'model'");
    const JumpModel& model = *config.model;
    nlohmann::json j;
    j["model"] = model.descriptor();
    j["alpha"] = model.alpha();
    j["beta"] = model.index().beta_infinite() ? nlohmann::json(nullptr) : nlohmann::json(model.beta());
    j["limit_density_at_zero"] = limit_density_at_zero(model);
    j["gamma"] = gamma_constant(model);
    j["x"] = config.x;
    j["escape_probability_x"] = escape_probability(model, config.x);
    j["cramer_margin"] = cramer_margin(model, 1.0, 1e4, 1000);
    const auto norm = NormalizerG::for_alpha(model.alpha());
    std::vector<std::int64_t> grid;
    for (std::int64_t n = 100; n <= 100'000'000'000LL; n *= 10) grid.push_back(n);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : g_asymptotics_report(*norm, grid)) {
        rows.push_back({{"n", row.n}, {"n_over_A_n", row.n_over_a}, {"G_scaled", row.g_over_beta}, {"ratio", row.ratio}});
    }
    j["g_asymptotics"] = rows;
    return j;
}

nlohmann::json to_json(const LocalLimitEstimate& e) {
    return {{"estimate", e.estimate}, {"stderr", e.std_error}, {"theory", e.theory}, {"hits", e.hits},
            {"trials", e.trials}};
}

namespace {

class Output {
  public:
    Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }
    void finish() {
        stream().flush();
        if (!stream()) throw IoError("failed writing output");
    }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void write_json(const nlohmann::json& j, const std::string& path, std::ostream& fallback) {
    Output out(path, fallback);
    out.stream() << j.dump(2) << '\n';
    out.finish();
}

std::string csv_number(double v) { return format_double(v); }

void run(const ExperimentConfig& config, std::ostream& stdout_stream) {
    require_keys(config);
    switch (*config.experiment) {
        case ExperimentKind::Simulate: {
            const SampleSet set = cmd_simulate(config);
            Output out(config.out, stdout_stream);
            write_sample_csv(out.stream(), set);
            out.finish();
            return;
        }
        case ExperimentKind::Analyze: {
            std::ifstream in(config.in, std::ios::binary);
            if (!in) throw IoError("cannot open sample CSV '" + config.in + "'");
            const SampleSet set = read_sample_csv(in);
            const auto result = cmd_analyze(set, *config.law, *config.t_max, config.delta, config.model, config.gamma,
                                            config.grid);
            nlohmann::json j = to_json(result.report);
            write_json(j, config.out, stdout_stream);
            if (!config.plot.empty()) {
                Output plot(config.plot, stdout_stream);
                plot.stream() << "t,ECDF(t),F(t)\n";
                for (const auto& row : result.plot)
                    plot.stream() << csv_number(row.t) << ',' << csv_number(row.ecdf) << ',' << csv_number(row.theory)
                                  << '\n';
                plot.finish();
            }
            return;
        }
        case ExperimentKind::LimitLaw: {
            const double alpha = config.alpha ? *config.alpha : config.model->alpha();
            const LimitScale scale = config.law.value_or(alpha == 1.0 ? LimitScale::GScale : LimitScale::RawTau);
            const auto table = cmd_limit_law(alpha, scale, *config.t_max, config.grid, config.nodes,
                                             config.mc_samples, config.seed);
            Output out(config.out, stdout_stream);
            const bool routes = !table.volterra.empty();
            out.stream() << (routes ? "t,F(t),volterra,monte_carlo\n" : "t,F(t)\n");
            for (std::size_t i = 0; i < table.t.size(); ++i) {
                out.stream() << csv_number(table.t[i]) << ',' << csv_number(table.reference[i]);
                if (routes) out.stream() << ',' << csv_number(table.volterra[i]) << ',' << csv_number(table.monte_carlo[i]);
                out.stream() << '\n';
            }
            out.finish();
            return;
        }
        case ExperimentKind::Rate: {
            const auto result = cmd_rate(config);
            write_json(to_json(result.report), config.out, stdout_stream);
            if (!config.plot.empty()) {
                Output plot(config.plot, stdout_stream);
                plot.stream() << "log_eps,log_tau,censored\n";
                for (const auto& p : result.input.points)
                    plot.stream() << csv_number(p.log_eps) << ',' << csv_number(p.log_tau) << ',' << (p.censored ? 1 : 0)
                                  << '\n';
                plot.finish();
            }
            return;
        }
        case ExperimentKind::LocalLimit:
            write_json(to_json(cmd_local_limit(config)), config.out, stdout_stream);
            return;
        case ExperimentKind::Report:
            write_json(cmd_report(config), config.out, stdout_stream);
            return;
    }
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& stdout_stream, std::ostream& err) {
    try {
        run(config, stdout_stream);
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const StatisticalRefusal& e) {
        err << "refused: " << e.what() << '\n';
        return kExitRefusal;
    } catch (const ConvergenceError& e) {
        err << "refused: " << e.what() << '\n';
        return kExitRefusal;
    }
}

}  // namespace stablewalk
