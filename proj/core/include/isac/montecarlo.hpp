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

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace isac {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(trials)
    int trials = 0;
};

struct ChannelDraw {
    CMat h_c;                ///< N_u x N_t
    std::vector<CMat> g;     ///< L entries, N_r x N_t
};

/// One realization of every channel: mean + left (profile .* Z) right^H with
/// Z i.i.d. CN(0, 1/N_t). A pure function of (stats.seed, trial).
ChannelDraw sample_channels(const ScenarioStats& stats, std::uint64_t trial);

/// M x N_s symbol block with i.i.d. CN(0, 1/N_s) entries, so E[S S^H] = I_M.
CMat sample_symbols(const SystemDims& dims, std::uint64_t seed, std::uint64_t trial);

/// logdet(I + G S S^H G^H / sigma^2) in nats, G the stack of g_l W.
double finite_mi_sensing(const std::vector<CMat>& g, const CMat& s, const CMat& w,
                         double sigma_s2);

/// logdet(I + H W W^H H^H / sigma^2) in nats.
double finite_mi_comm(const CMat& h, const CMat& w, double sigma_c2);

enum class McQuantity {
    mi_s,         ///< finite_mi_sensing at sigma_s^2
    mi_c,         ///< finite_mi_comm at sigma_c^2
    resolvent_s,  ///< (1/L N_r) Tr (wI - B1)^{-1}, w = -sigma_s^2
    resolvent_c,  ///< (1/N_u) Tr (wI - B2)^{-1}, w = -sigma_c^2
};

struct McOptions {
    int trials = 10000;
    int workers = 0;               ///< 0: default_worker_count()
    std::ostream* dump = nullptr;  ///< receives "trial,value" CSV rows in trial order
};

/// Sample mean over independent trials. Trial t always uses the streams of
/// index t, so the result does not depend on the worker count.
McEstimate estimate(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
                    McQuantity quantity, const McOptions& opts);

/// Pooled eigenvalues of B1 = G S S^H G^H (sensing) or B2 = H W W^H H^H (comm).
class EigenEcdf {
  public:
    explicit EigenEcdf(std::vector<double> samples);

    /// Fraction of samples <= x.
    double operator()(double x) const;
    const std::vector<double>& samples() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

enum class GramBranch { sensing, comm };

EigenEcdf eigen_ecdf(const ScenarioStats& stats, const Beamformer& bf, GramBranch branch,
                     int trials, int workers = 0);

} // namespace isac
