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

#include "isac/model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace isac {

/// Malformed or schema-violating scenario document.
class ScenarioFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Scenario documents are JSON:
//
//   { "format": "isac-mi/scenario", "version": 1,
//     "dims": {"n_t":..,"n_r":..,"n_u":..,"num_scatter":..,"m":..,"n_s":..},
//     "rician_kappa": <number | "inf">, "seed": <uint>, "geometry": {...},
//     "comm": <channel>, "sensing": [<channel>, ...] }
//
// with <channel> = {"mean", "left_unitary", "right_unitary", "variance_profile"}.
// Matrices are {"rows": r, "cols": c, "data": [...]} with data in row-major
// order; complex entries are [re, im] pairs. Doubles are written with
// round-trip precision so a reload is bit-identical.

std::string scenario_to_json(const ScenarioStats& stats, int indent = 1);
ScenarioStats scenario_from_json(const std::string& text);

void save_scenario(const ScenarioStats& stats, const std::filesystem::path& path);
ScenarioStats load_scenario(const std::filesystem::path& path);

} // namespace isac
