// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// stablewalk: command-line front end for the hitting-time experiments.
//
//   stablewalk run CONFIG [--set key=value]...
//   stablewalk simulate|analyze|limit-law|rate|local-limit|report CONFIG [--set key=value]...
//   stablewalk canonical CONFIG
//   stablewalk g-table --alpha A --max-n N [--dense] [--out FILE]
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stablewalk/config.hpp"
#include "stablewalk/errors.hpp"
#include "stablewalk/experiments.hpp"
#include "stablewalk/normalization.hpp"
#include "stablewalk/text.hpp"

using namespace stablewalk;

namespace {

int run_from_file(const std::string& path, const std::vector<std::string>& overrides,
                  const std::string& forced_kind) {
    try {
        ExperimentConfig config = apply_overrides(load_config(path), overrides);
        if (!forced_kind.empty()) {
            const ExperimentKind kind = parse_experiment_kind(forced_kind);
            if (config.experiment && *config.experiment != kind) {
                std::cerr << "error: config declares experiment '" << to_string(*config.experiment)
                          << "' but the subcommand is '" << forced_kind << "'\n";
                return kExitValidation;
            }
            config.experiment = kind;
        }
        return run_experiment(config, std::cout, std::cerr);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
}

int dump_g_table(double alpha, std::int64_t max_n, bool dense, const std::string& out_path) {
    try {
        if (max_n < 0 || static_cast<double>(max_n) > NormalizerG::kMaxArgument)
            throw ValidationError("--max-n must lie in [0, 1e12]");
        const auto norm = NormalizerG::for_alpha(alpha);
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw IoError("cannot open output file '" + out_path + "'");
        }
        std::ostream& out = out_path.empty() ? std::cout : file;
        out << "n,G(n)\n";
        out << "0,0\n";
        if (dense) {
            for (std::int64_t n = 1; n <= max_n; ++n) out << n << ',' << format_double(norm->at(n)) << '\n';
        } else {
            for (std::int64_t n = 1; n <= max_n; n *= 2) out << n << ',' << format_double(norm->at(n)) << '\n';
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hitting times of random walks with stable-attracted jumps"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string chosen_kind;

    auto* run = app.add_subcommand("run", "Run the experiment named by the config's 'experiment' key");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--set", overrides, "Override a config key (key=value)");

    const std::vector<std::string> kinds = {"simulate", "analyze", "limit-law", "rate", "local-limit", "report"};
    std::vector<CLI::App*> kind_commands;
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind, "Run a '" + kind + "' experiment");
        sub->add_option("config", config_path, "Config file")->required();
        sub->add_option("--set", overrides, "Override a config key (key=value)");
        kind_commands.push_back(sub);
    }

    auto* canonical = app.add_subcommand("canonical", "Print the canonical form of a config");
    canonical->add_option("config", config_path, "Config file")->required();

    double alpha = 2.0;
    std::int64_t max_n = 1 << 20;
    bool dense = false;
    std::string out_path;
    auto* gtable = app.add_subcommand("g-table", "Dump n,G(n) for debugging");
    gtable->add_option("--alpha", alpha, "Stability index in [1, 2]")->required();
    gtable->add_option("--max-n", max_n, "Largest n");
    gtable->add_flag("--dense", dense, "Every n instead of powers of two");
    gtable->add_option("--out", out_path, "Output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (run->parsed()) return run_from_file(config_path, overrides, "");
    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (kind_commands[i]->parsed()) return run_from_file(config_path, overrides, kinds[i]);
    if (canonical->parsed()) {
        try {
            std::cout << serialize_config(load_config(config_path));
            return kExitOk;
        } catch (const ValidationError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitValidation;
        } catch (const IoError& e) {
            std::cerr << "I/O error: " << e.what() << '\n';
            return kExitIo;
        }
    }
    if (gtable->parsed()) return dump_g_table(alpha, max_n, dense, out_path);
    return kExitValidation;
}
