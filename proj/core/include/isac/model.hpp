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

#include "isac/linalg.hpp"

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace isac {

/// Antenna, stream and sample counts of the ISAC link.
///
/// The UE transmits with n_t antennas and listens to target echoes with n_r
/// antennas; the BS receives with n_u antennas. The target is made of
/// num_scatter scatterers. m data streams are precoded onto n_t antennas and
/// each frame carries n_s samples.
struct SystemDims {
    int n_t = 1;
    int n_r = 1;
    int n_u = 1;
    int num_scatter = 1;
    int m = 1;
    int n_s = 1;

    /// Rows of the stacked sensing channel, L * N_r.
    int sensing_rows() const { return num_scatter * n_r; }

    friend bool operator==(const SystemDims&, const SystemDims&) = default;
};

/// Throws DimensionError naming the first violated constraint.
void validate(const SystemDims& dims);

/// Statistics of one Weichselberger channel  X = mean + left (profile .* P) right^H,
/// with P i.i.d. CN(0, 1/cols).
struct WeichselbergerStats {
    CMat mean;
    CMat left_unitary;
    CMat right_unitary;
    RMat variance_profile;

    Eigen::Index rows() const { return mean.rows(); }
    Eigen::Index cols() const { return mean.cols(); }

    /// E ||random part||_F^2 = sum(profile^2) / cols.
    double scattered_power() const;

    /// Throws DimensionError on shape mismatch, ParameterError on a
    /// non-unitary basis or negative profile entry.
    void validate() const;
};

/// Angles (radians) that place the LoS components.
struct Geometry {
    double comm_departure_azimuth = 0.35;
    double comm_departure_elevation = 0.10;
    double comm_arrival_azimuth = -0.25;
    double comm_arrival_elevation = 0.05;
    double target_azimuth = -0.60;
    double target_elevation = 0.20;
    /// Scatterer directions are drawn uniformly within +/- this spread
    /// around the target center, independently in azimuth and elevation.
    double angular_spread = 0.15;

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

inline constexpr double kPureLosKappa = std::numeric_limits<double>::infinity();

/// Deterministic channel statistics of a full scenario.
struct ScenarioStats {
    SystemDims dims;
    WeichselbergerStats comm;                  ///< N_u x N_t
    std::vector<WeichselbergerStats> sensing;  ///< L entries, each N_r x N_t
    double rician_kappa = 1.0;
    std::uint64_t seed = 0;
    Geometry geometry;

    void validate() const;
};

/// Receiver noise powers derived from the BS-side SNR.
struct NoiseConfig {
    double snr_bs_db = 10.0;
    double sensing_offset_db = 20.0;

    double sigma_c2() const;
    double sigma_s2() const;
};

/// Transmit precoder W (N_t x M) with its power budget.
struct Beamformer {
    CMat w;
    double p_t = 1.0;

    double power() const { return w.squaredNorm(); }
    bool feasible(double slack = 1e-9) const { return power() <= p_t + slack; }
};

/// Half-wavelength uniform planar array response with rows x cols elements.
/// Element (r, c), stored at index r * cols + c, has phase
/// pi * (r sin(az) cos(el) + c sin(el)).
CVec upa_steering(int rows, int cols, double azimuth, double elevation);

/// Near-square factorization rows * cols = n used for an n-element UPA.
std::pair<int, int> upa_shape(int n);

/// Draws a reproducible scenario. kappa = +inf yields zero variance profiles.
ScenarioStats generate_scenario(const SystemDims& dims, double rician_kappa, std::uint64_t seed,
                                const Geometry& geometry = {});

/// sqrt(p_t / M) [I_M; 0].
Beamformer default_beamformer(const SystemDims& dims, double p_t);

/// LoS components seen through the beamformer.
struct EffectiveLos {
    CMat g_eff;  ///< L N_r x M, stacked mean_l * W
    CMat h_eff;  ///< N_u x M
    CMat g_raw;  ///< L N_r x N_t, stacked LoS means
};

EffectiveLos effective_los(const ScenarioStats& stats, const CMat& w);

/// Stacked LoS means of the sensing channels (L N_r x N_t).
CMat stacked_sensing_mean(const ScenarioStats& stats);

/// Copy of `stats` with every variance profile set to zero.
ScenarioStats pure_los(ScenarioStats stats);

/// Copy of `stats` with every LoS mean set to zero.
ScenarioStats without_los(ScenarioStats stats);

} // namespace isac
