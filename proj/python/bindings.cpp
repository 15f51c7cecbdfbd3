// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stablewalk/config.hpp"
#include "stablewalk/errors.hpp"
#include "stablewalk/experiments.hpp"
#include "stablewalk/jump_models.hpp"
#include "stablewalk/limit_laws.hpp"
#include "stablewalk/normalization.hpp"
#include "stablewalk/stats.hpp"
#include "stablewalk/walk_engine.hpp"

namespace py = pybind11;
using namespace stablewalk;

namespace {

py::dict sample_dict(const SampleSet& set) {
    const std::size_t n = set.samples.size();
    py::array_t<std::uint64_t> steps(n);
    py::array_t<bool> hit(n);
    py::array_t<bool> excluded(n);
    auto s = steps.mutable_unchecked<1>();
    auto h = hit.mutable_unchecked<1>();
    auto e = excluded.mutable_unchecked<1>();
    for (std::size_t i = 0; i < n; ++i) {
        s(i) = set.samples[i].steps();
        h(i) = set.samples[i].is_hit();
        e(i) = set.samples[i].excluded;
    }
    py::dict d;
    d["steps"] = steps;
    d["hit"] = hit;
    d["excluded"] = excluded;
    d["model"] = set.config.model.descriptor();
    d["x"] = set.config.x;
    d["epsilon"] = set.config.epsilon;
    d["initial"] = set.config.initial.descriptor();
    d["cap"] = set.config.cap;
    d["seed"] = set.config.master_seed;
    return d;
}

WalkConfig walk_config(const std::string& model, double x, double epsilon, std::uint64_t cap, std::uint64_t trials,
                       std::uint64_t seed, const std::string& initial) {
    WalkConfig c;
    c.model = JumpModel::parse(model);
    c.x = x;
    c.epsilon = epsilon;
    c.cap = cap;
    c.trials = trials;
    c.master_seed = seed;
    c.initial = InitialDistribution::parse(initial);
    return c;
}

}  // namespace

PYBIND11_MODULE(_stablewalk, m) {
    m.doc() = "Hitting times of random walks with stable-attracted jumps";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<StatisticalRefusal>(m, "StatisticalRefusal", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "model_info",
        [](const std::string& descriptor, double x) {
            const auto model = JumpModel::parse(descriptor);
            py::dict d;
            d["descriptor"] = model.descriptor();
            d["alpha"] = model.alpha();
            d["beta"] = model.beta();
            d["limit_density_at_zero"] = limit_density_at_zero(model);
            d["gamma"] = gamma_constant(model);
            d["escape_probability"] = escape_probability(model, x);
            return d;
        },
        py::arg("model"), py::arg("x") = 0.0);

    m.def(
        "sample_jumps",
        [](const std::string& descriptor, std::size_t n, std::uint64_t seed) {
            const auto model = JumpModel::parse(descriptor);
            RngState rng(seed);
            py::array_t<double> out(n);
            auto v = out.mutable_unchecked<1>();
            for (std::size_t i = 0; i < n; ++i) v(i) = sample_jump(model, rng);
            return out;
        },
        py::arg("model"), py::arg("n"), py::arg("seed") = 0);

    m.def(
        "g_value", [](double alpha, double u) { return g_value(*NormalizerG::for_alpha(alpha), u); }, py::arg("alpha"),
        py::arg("u"));
    m.def(
        "g_inverse", [](double alpha, double y) { return g_inverse(*NormalizerG::for_alpha(alpha), y); },
        py::arg("alpha"), py::arg("y"));

    m.def(
        "simulate",
        [](const std::string& model, double x, double epsilon, std::uint64_t cap, std::uint64_t trials,
           std::uint64_t seed, const std::string& initial, unsigned workers) {
            const auto config = walk_config(model, x, epsilon, cap, trials, seed, initial);
            SampleSet set;
            {
                py::gil_scoped_release release;
                set = run_batch(config, workers);
            }
            return sample_dict(set);
        },
        py::arg("model"), py::arg("x") = 0.0, py::arg("epsilon"), py::arg("cap") = 100'000'000ULL, py::arg("trials"),
        py::arg("seed") = 0, py::arg("initial") = "point:0", py::arg("workers") = 0);

    m.def(
        "analyze",
        [](const std::string& model, double x, double epsilon, std::uint64_t cap, std::uint64_t seed,
           const std::string& initial, const std::vector<std::uint64_t>& steps, const std::vector<bool>& hit,
           const std::vector<bool>& excluded, const std::string& law, double t_max, double delta) {
            if (steps.size() != hit.size() || steps.size() != excluded.size())
                throw ValidationError("steps, hit and excluded must have equal length");
            SampleSet set;
            set.config = walk_config(model, x, epsilon, cap, steps.size(), seed, initial);
            for (std::size_t i = 0; i < steps.size(); ++i) {
                if (hit[i]) set.samples.push_back({Hit{steps[i]}, excluded[i]});
                else set.samples.push_back({Censored{steps[i]}, excluded[i]});
            }
            const auto result = cmd_analyze(set, parse_limit_scale(law), t_max, delta);
            py::dict d;
            d["ks"] = result.report.ks;
            d["t_max"] = result.report.t_max;
            d["n_effective"] = result.report.n_effective;
            d["dkw"] = result.report.dkw;
            d["delta"] = result.report.delta;
            return d;
        },
        py::arg("model"), py::arg("x"), py::arg("epsilon"), py::arg("cap"), py::arg("seed"), py::arg("initial"),
        py::arg("steps"), py::arg("hit"), py::arg("excluded"), py::arg("law"), py::arg("t_max"),
        py::arg("delta") = 1e-3);

    m.def(
        "limit_cdf",
        [](const std::string& model, double x, const std::string& law, double t) {
            return limit_cdf(LimitLawSpec::for_model(JumpModel::parse(model), x, parse_limit_scale(law)), t);
        },
        py::arg("model"), py::arg("x"), py::arg("law"), py::arg("t"));
    m.def("cdf_alpha1", &cdf_alpha1, py::arg("t"));
    m.def("cdf_e_over_abs_n", &cdf_e_over_abs_n, py::arg("t"));
    m.def("laplace_transform_w", &laplace_transform_w, py::arg("beta"), py::arg("s"));

    m.def(
        "volterra_cdf",
        [](double alpha, double t_max, int nodes, double tolerance) {
            const auto sol = cdf_limit_via_volterra(alpha, t_max, nodes, tolerance);
            py::dict d;
            d["grid"] = sol.grid;
            d["F"] = sol.F;
            d["refinement_error"] = sol.refinement_error;
            return d;
        },
        py::arg("alpha"), py::arg("t_max"), py::arg("nodes") = 2000, py::arg("tolerance") = 1e-3);

    m.def(
        "sample_w",
        [](double beta, std::size_t n, std::uint64_t seed) {
            RngState rng(seed);
            py::array_t<double> out(n);
            auto v = out.mutable_unchecked<1>();
            for (std::size_t i = 0; i < n; ++i) v(i) = sample_limit_w(beta, rng);
            return out;
        },
        py::arg("beta"), py::arg("n"), py::arg("seed") = 0);

    m.def(
        "rate",
        [](const std::string& model, double x, const std::vector<double>& ladder, std::uint64_t cap,
           std::uint64_t trials, std::uint64_t seed) {
            SlopeInput input;
            {
                py::gil_scoped_release release;
                input = rate_experiment(JumpModel::parse(model), x, ladder, cap, trials, seed);
            }
            const auto report = loglog_slope(input.points);
            py::dict d;
            d["slope"] = report.slope;
            d["stderr"] = report.std_error;
            d["n_points"] = report.n_points;
            d["n_censored"] = report.n_censored;
            return d;
        },
        py::arg("model"), py::arg("x") = 0.0, py::arg("epsilon_ladder"), py::arg("cap"), py::arg("trials"),
        py::arg("seed") = 0);

    m.def(
        "local_limit",
        [](const std::string& model, std::uint64_t n, double half_width, std::uint64_t trials, std::uint64_t seed) {
            LocalLimitEstimate e;
            {
                py::gil_scoped_release release;
                e = local_limit_probe(JumpModel::parse(model), n, half_width, trials, seed, 0);
            }
            py::dict d;
            d["estimate"] = e.estimate;
            d["stderr"] = e.std_error;
            d["theory"] = e.theory;
            d["hits"] = e.hits;
            d["trials"] = e.trials;
            return d;
        },
        py::arg("model"), py::arg("n"), py::arg("half_width"), py::arg("trials"), py::arg("seed") = 0);

    m.def(
        "run_config",
        [](const std::string& text, const std::vector<std::string>& overrides) {
            std::ostringstream out;
            std::ostringstream err;
            int code = kExitOk;
            try {
                const auto config = apply_overrides(parse_config(text), overrides);
                py::gil_scoped_release release;
                code = run_experiment(config, out, err);
            } catch (const ValidationError& e) {
                err << "error: " << e.what() << '\n';
                code = kExitValidation;
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("text"), py::arg("overrides") = std::vector<std::string>{});

    m.def("canonical_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
          py::arg("text"));
}
