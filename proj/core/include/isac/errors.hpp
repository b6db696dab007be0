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

#include <stdexcept>
#include <string>

namespace isac {

/// Violated dimension or shape constraint (e.g. M > N_t, mismatched operands).
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid scalar parameter (kappa < 0, rho outside [0,1], ...).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of the numerical pipeline.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A matrix that must be inverted or factorized is (numerically) singular.
class SingularMatrixError : public NumericalError {
  public:
    SingularMatrixError(std::string where, double condition)
        : NumericalError("singular matrix in " + where + " (condition estimate " +
                         std::to_string(condition) + ")"),
          where_(std::move(where)), condition_(condition) {}

    const std::string& where() const noexcept { return where_; }
    double condition() const noexcept { return condition_; }

  private:
    std::string where_;
    double condition_;
};

/// Fixed-point iteration hit its iteration cap before reaching tolerance.
class NonConvergenceError : public NumericalError {
  public:
    NonConvergenceError(std::string what_system, int iterations, double residual)
        : NumericalError(what_system + " fixed point did not converge after " +
                         std::to_string(iterations) + " iterations (residual " +
                         std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

  private:
    int iterations_;
    double residual_;
};

} // namespace isac
