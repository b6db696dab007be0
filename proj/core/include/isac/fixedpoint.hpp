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

#include <iosfwd>
#include <vector>

namespace isac {

/// Real spectral argument w = -sigma^2 at which resolvents (wI - B)^{-1}
/// are evaluated. Always negative.
struct SpectralPoint {
    double w = -1.0;

    static SpectralPoint from_noise_power(double sigma2);
    double noise_power() const { return -w; }
};

struct SolverOptions {
    double tol = 1e-10;      ///< on the relative residual
    int max_iter = 5000;
    double damping = 0.5;    ///< X <- (1 - a) X + a rhs(X), a in (0, 1]
    /// When set, receives "iteration,residual" CSV rows.
    std::ostream* trace = nullptr;

    void validate() const;
};

/// Deterministic equivalent of the sensing Gram matrix B1 = G^ S S^H G^H.
///
/// Resolvent-side quantities: g_c_tilde ~ E (wI - B1)^{-1} (negative
/// definite for w < 0), g_c positive definite, g_dd negative semidefinite.
/// Phi, Phi~ and G_D~ are multiples of the identity and stored as scalars.
struct SensingFixedPoint {
    double w = -1.0;
    CMat g_c_tilde;                     ///< L N_r x L N_r
    CMat g_c;                           ///< M x M
    double g_d_scalar = 1.0;            ///< G_D~ = g_d_scalar I_{N_s}
    CMat g_dd;                          ///< M x M
    std::vector<CMat> psi_tilde_blocks; ///< L blocks of N_r x N_r
    CMat psi;                           ///< M x M
    double phi_tilde_scalar = -1.0;     ///< Phi~ = phi_tilde_scalar I_M
    double phi_scalar = 1.0;            ///< Phi = phi_scalar I_{N_s}
    CMat pi;                            ///< M x M
    double residual = 0.0;
    int iterations = 0;

    /// Block diagonal Psi~ (L N_r x L N_r).
    CMat psi_tilde() const;
    /// Block-wise inverse of Psi~.
    CMat psi_tilde_inverse() const;
    /// l-th N_r x N_r diagonal block of g_c_tilde.
    CMat g_c_tilde_block(int l) const;
};

/// Deterministic equivalent of the communication Gram matrix B2 = H W W^H H^H.
struct CommFixedPoint {
    double w = -1.0;
    CMat g_e_tilde;    ///< N_u x N_u, negative definite
    CMat g_e;          ///< M x M, positive definite
    CMat omega_tilde;  ///< N_u x N_u
    CMat omega;        ///< M x M
    double residual = 0.0;
    int iterations = 0;
};

/// Damped Picard iteration of the sensing system, started from the
/// zero-channel solution. Throws NonConvergenceError after max_iter, and
/// SingularMatrixError naming the equation when an inverse is ill posed.
SensingFixedPoint solve_sensing(const ScenarioStats& stats, const Beamformer& bf,
                                SpectralPoint point, const SolverOptions& opts = {});

/// Same for the communication system.
CommFixedPoint solve_comm(const ScenarioStats& stats, const Beamformer& bf, SpectralPoint point,
                          const SolverOptions& opts = {});

/// max over the coupled equations of ||lhs - rhs||_F / (1 + ||rhs||_F), with
/// every right-hand side re-evaluated at the stored solution.
double residual(const ScenarioStats& stats, const Beamformer& bf, const SensingFixedPoint& fp);
double residual(const ScenarioStats& stats, const Beamformer& bf, const CommFixedPoint& fp);

} // namespace isac
