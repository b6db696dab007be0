// SPDX-License-Identifier: Apache-2.0
//
// isac-mi: asymptotic mutual information and beamforming for MIMO ISAC
// Copyright (C) 2026 The isac-mi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "config.hpp"
#include "experiments.hpp"

#include "isac/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace isac::cli;

namespace {

struct Flags {
    std::string config;
    std::string out;
    int trials = 0;
    std::uint64_t seed = 0;
    bool fast = false;
};

int run(ExperimentKind kind, const Flags& f, CLI::App& sub) {
    ExperimentConfig cfg;
    try {
        if (!f.config.empty())
            cfg = load_config(f.config);
        if (sub.count("--out"))
            cfg.output.dir = f.out;
        if (sub.count("--trials")) {
            cfg.run.trials = f.trials;
            cfg.run.fast_trials = f.trials;
        }
        if (sub.count("--seed"))
            cfg.scenario.seed = f.seed;
        cfg.fast = f.fast;
        validate(cfg, kind);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    try {
        const ExperimentResult r = run_experiment(cfg, kind);
        for (const auto& p : write_outputs(cfg, r))
            std::cerr << "wrote " << p << '\n';
        for (const auto& m : r.messages)
            std::cerr << m << '\n';
        if (!r.passed) {
            std::cerr << to_string(kind) << ": check failed\n";
            return 2;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const StageError& e) {
        std::cerr << "numerical failure in " << e.what() << '\n';
        return 2;
    } catch (const isac::NumericalError& e) {
        std::cerr << "numerical failure in " << to_string(kind) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic mutual information and beamforming experiments for MIMO ISAC"};
    app.footer(csv_schemas());
    app.require_subcommand(1);

    Flags flags;
    struct Entry {
        ExperimentKind kind;
        const char* help;
        CLI::App* sub = nullptr;
    };
    std::vector<Entry> entries{
        {ExperimentKind::verify, "closed form against Monte Carlo over the SNR grid"},
        {ExperimentKind::convergence, "PGA traces for each antenna count"},
        {ExperimentKind::sweep, "default beamformer against PGA over the SNR grid"},
        {ExperimentKind::tradeoff, "optimized (i_s, i_c) over the rho grid"},
        {ExperimentKind::scenario_gen, "write the configured scenario as pinned JSON"},
    };
    for (auto& e : entries) {
        e.sub = app.add_subcommand(to_string(e.kind), e.help);
        e.sub->add_option("--config", flags.config, "JSON experiment config")->check(CLI::ExistingFile);
        e.sub->add_option("--out", flags.out, "output directory (overrides output.dir)");
        e.sub->add_option("--trials", flags.trials, "Monte Carlo trials (overrides run.trials)")
            ->check(CLI::PositiveNumber);
        e.sub->add_option("--seed", flags.seed, "scenario seed (overrides scenario.seed)");
        e.sub->add_flag("--fast", flags.fast, "use run.fast_trials Monte Carlo trials");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (auto& e : entries)
        if (e.sub->parsed())
            return run(e.kind, flags, *e.sub);
    return 1;
}
