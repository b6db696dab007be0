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

#include "isac/errors.hpp"
#include "isac/fixedpoint.hpp"
#include "isac/mi.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isac {

enum class StepRule { fixed, backtracking };

struct PgaOptions {
    double epsilon = 1e-4;      ///< stop when |I_i - I_{i-1}| <= epsilon (nats)
    int max_outer_iters = 50;
    StepRule step_rule = StepRule::backtracking;
    double fixed_step = 0.1;    ///< lambda for StepRule::fixed
    /// Backtracking: lambda_0 = sqrt(P_t) / (1 + ||grad||_F), shrunk by
    /// `shrink` until the Armijo test with slope `armijo` passes.
    double shrink = 0.5;
    double armijo = 1e-4;
    double min_step = 1e-12;    ///< backtracking gives up below this
    /// Starting point. Unset: complex Gaussian draw from `seed`, projected.
    std::optional<CMat> initial;
    std::uint64_t seed = 1;
    SolverOptions solver;

    void validate() const;
};

struct PgaIteration {
    int iter = 0;
    double weighted = 0.0;   ///< nats, at the accepted W
    double step = 0.0;       ///< lambda that produced this iterate (0 for the start)
    double grad_norm = 0.0;  ///< ||grad||_F at this iterate
    bool feasible = true;
};

struct PgaTrace {
    std::vector<PgaIteration> rows;

    /// "iter,weighted_bits,step,grad_norm"
    std::string to_csv() const;
};

enum class PgaStop { tolerance, max_iterations, stationary, step_underflow };

struct PgaResult {
    Beamformer beamformer;
    MiReport report;   ///< at the returned beamformer
    PgaTrace trace;
    PgaStop stop = PgaStop::max_iterations;
};

/// Raised when a fixed-point solve fails inside an iteration; carries the
/// trace accumulated so far.
class PgaAborted : public NumericalError {
  public:
    PgaAborted(const std::string& cause, PgaTrace trace)
        : NumericalError("beamforming optimization aborted: " + cause), trace_(std::move(trace)) {}
    const PgaTrace& trace() const noexcept { return trace_; }

  private:
    PgaTrace trace_;
};

/// Gradient of the weighted MI (nats) with respect to W in the real sense:
/// for a perturbation dW the first-order change is Re Tr(grad^H dW), so
/// W + lambda grad is an ascent step. Fixed points must be converged at W
/// (residual <= max_residual) and at the noise powers from `noise`.
CMat gradient(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
              double rho, const SensingFixedPoint& fp_s, const CommFixedPoint& fp_c,
              double max_residual = 1e-8);

/// Radial projection onto {||W||_F^2 <= p_t}.
CMat project(const CMat& w, double p_t);

/// Projected gradient ascent on the weighted MI with power budget p_t.
PgaResult pga(const ScenarioStats& stats, const NoiseConfig& noise, double rho, double p_t,
              const PgaOptions& opts = {});

} // namespace isac
