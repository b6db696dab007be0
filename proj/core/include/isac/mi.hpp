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

#include <string>

namespace isac {

/// Asymptotic mutual information of both links for one beamformer, in nats.
struct MiReport {
    double i_s = 0.0;       ///< L N_r V_B1
    double i_c = 0.0;       ///< N_u V_B2
    double weighted = 0.0;  ///< rho i_s + (1 - rho) i_c
    double rho = 0.0;
    double residual_s = 0.0;
    double residual_c = 0.0;
    int iters_s = 0;
    int iters_c = 0;
};

enum class Branch { sensing, comm };

/// Per-dimension Shannon transform of the sensing Gram matrix at point.w.
/// Throws NumericalError if the log-determinant terms do not combine into a
/// real number (a symptom of an unconverged or wrong-branch solution).
double shannon_sensing(const SensingFixedPoint& fp, SpectralPoint point, const SystemDims& dims,
                       const CMat& g_eff);

/// Per-dimension Shannon transform of the communication Gram matrix.
double shannon_comm(const CommFixedPoint& fp, SpectralPoint point, const SystemDims& dims,
                    const CMat& h_eff);

/// Normalized traces of G_C~ and G_E~, i.e. the Cauchy transforms at w.
double cauchy_sensing(const SensingFixedPoint& fp);
double cauchy_comm(const CommFixedPoint& fp);

/// MiReport together with the fixed points it was computed from.
struct MiEvaluation {
    MiReport report;
    SensingFixedPoint sensing;
    CommFixedPoint comm;
};

/// Solves the sensing system at sigma_s^2 and the communication system at
/// sigma_c^2. Solver errors propagate.
MiEvaluation evaluate_mi(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
                         double rho, const SolverOptions& opts = {});

MiReport weighted_mi(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
                     double rho, const SolverOptions& opts = {});

/// |dV/dsigma^2 + 1/sigma^2 + G(-sigma^2)| with the derivative taken by
/// central differences of step h (absolute, in noise-power units).
double derivative_identity_check(const ScenarioStats& stats, const Beamformer& bf,
                                 const NoiseConfig& noise, Branch branch, double h,
                                 const SolverOptions& opts = {});

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

/// "snr_db,rho,i_s_bits,i_c_bits,weighted_bits,residual_s,residual_c,iters_s,iters_c"
std::string mi_csv_header();
std::string mi_csv_row(const MiReport& r, double snr_db);

/// Decimal rendering used in every CSV written by the library (%.12g).
std::string format_number(double v);

} // namespace isac
