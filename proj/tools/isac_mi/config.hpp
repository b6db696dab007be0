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

#pragma once

#include "isac/fixedpoint.hpp"
#include "isac/model.hpp"
#include "isac/optimizer.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac::cli {

/// Malformed or out-of-range configuration. Maps to exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { verify, convergence, sweep, tradeoff, scenario_gen };

const char* to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& name);

struct ScenarioBlock {
    SystemDims dims{16, 16, 16, 2, 16, 16};
    double kappa = 1.0;
    std::uint64_t seed = 7;
    Geometry geometry;
    /// Pinned scenario JSON; when set, dims/kappa/seed/geometry are ignored.
    std::optional<std::filesystem::path> file;
};

struct NoiseBlock {
    std::vector<double> snr_db{-10.0, 0.0, 10.0, 20.0, 30.0};
    double sensing_offset_db = 20.0;
};

struct PgaBlock {
    std::optional<double> epsilon;   ///< default depends on the experiment
    std::optional<int> max_iters;
    StepRule step_rule = StepRule::backtracking;
    double fixed_step = 0.1;
    std::uint64_t seed = 1;
};

struct RunBlock {
    std::optional<ExperimentKind> experiment;
    double rho = 0.8;
    std::vector<double> rho_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<int> antennas{4, 8, 16};
    int trials = 10000;
    int fast_trials = 2000;
    double gap_threshold = 0.02;
    std::optional<double> p_t;       ///< default N_t
    SolverOptions solver;
    PgaBlock pga;
};

struct OutputBlock {
    std::filesystem::path dir = "out";
    bool gnuplot = true;
};

struct ExperimentConfig {
    ScenarioBlock scenario;
    NoiseBlock noise;
    RunBlock run;
    OutputBlock output;
    bool fast = false;   ///< set by --fast; MC uses run.fast_trials

    int mc_trials() const { return fast ? run.fast_trials : run.trials; }
};

/// Parses a JSON document. Unknown keys and wrong types raise ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Range checks for the given experiment; raises ConfigError.
void validate(const ExperimentConfig& cfg, ExperimentKind kind);

/// Scenario described by the config (generated or loaded from file).
ScenarioStats build_scenario(const ExperimentConfig& cfg);

/// Same statistics family with every antenna count and stream count set to n.
ScenarioStats build_scenario(const ExperimentConfig& cfg, int n);

} // namespace isac::cli
