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

#include "config.hpp"

#include <string>
#include <vector>

namespace isac::cli {

/// Failure of a numerical stage. Maps to exit code 2.
class StageError : public std::runtime_error {
  public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

  private:
    std::string stage_;
};

struct ExperimentResult {
    std::string name;          ///< base file name, e.g. "verify"
    std::string csv;
    std::string dat;           ///< gnuplot rendering, empty if not applicable
    std::string scenario_json; ///< scenario-gen only
    bool passed = true;        ///< the experiment's own gates held
    std::vector<std::string> messages;
};

ExperimentResult run_verify(const ExperimentConfig& cfg);
ExperimentResult run_convergence(const ExperimentConfig& cfg);
ExperimentResult run_sweep(const ExperimentConfig& cfg);
ExperimentResult run_tradeoff(const ExperimentConfig& cfg);
ExperimentResult run_scenario_gen(const ExperimentConfig& cfg);

/// Validates cfg for `kind` and dispatches.
ExperimentResult run_experiment(const ExperimentConfig& cfg, ExperimentKind kind);

/// Writes csv/dat/json files under cfg.output.dir; returns the written paths.
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ExperimentResult& r);

/// CSV column documentation for --help.
std::string csv_schemas();

} // namespace isac::cli
