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

namespace isac {

/// E[X~^H C X~] for the random part X~ of a Weichselberger channel:
/// (1/cols) right * diag_i( sum_j profile(j,i)^2 [left^H C left]_jj ) * right^H.
/// C is rows x rows; the result is cols x cols.
CMat left_correlation(const WeichselbergerStats& s, const CMat& c);

/// E[X~ C X~^H]: (1/cols) left * diag_i( sum_j profile(i,j)^2 [right^H C right]_jj ) * left^H.
/// C is cols x cols; the result is rows x rows.
CMat right_correlation(const WeichselbergerStats& s, const CMat& c);

/// One-sided correlation maps of the sensing channels, the communication
/// channel and the symbol matrix, plus their beamformed variants in which the
/// precoder is absorbed into the channel (X~ -> X~ W).
///
/// Non-owning view: the referenced ScenarioStats must outlive it. Every input
/// is Hermitized first; an anti-Hermitian part above 1e-8 (Frobenius) or a
/// wrong shape raises DimensionError.
class CorrelationOps {
  public:
    explicit CorrelationOps(const ScenarioStats& stats) : stats_(&stats) {}

    const ScenarioStats& stats() const { return *stats_; }

    /// E[G~_l^H C G~_l]: N_r x N_r -> N_t x N_t.
    CMat eta(int l, const CMat& c) const;
    /// E[G~_l C G~_l^H]: N_t x N_t -> N_r x N_r.
    CMat eta_tilde(int l, const CMat& c) const;
    /// E[H~^H E H~]: N_u x N_u -> N_t x N_t.
    CMat tau(const CMat& e) const;
    /// E[H~ E H~^H]: N_t x N_t -> N_u x N_u.
    CMat tau_tilde(const CMat& e) const;
    /// E[S^H D S] = Tr(D)/N_s I_{N_s}: M x M -> N_s x N_s.
    CMat zeta(const CMat& d) const;
    /// E[S D S^H] = Tr(D)/N_s I_M: N_s x N_s -> M x M.
    CMat zeta_tilde(const CMat& d) const;

    /// W^H eta(l, C) W: N_r x N_r -> M x M.
    CMat eta_w(int l, const CMat& c, const CMat& w) const;
    /// eta_tilde(l, W C W^H): M x M -> N_r x N_r.
    CMat eta_tilde_w(int l, const CMat& c, const CMat& w) const;
    /// W^H tau(E) W: N_u x N_u -> M x M.
    CMat tau_w(const CMat& e, const CMat& w) const;
    /// tau_tilde(W E W^H): M x M -> N_u x N_u.
    CMat tau_tilde_w(const CMat& e, const CMat& w) const;

  private:
    const WeichselbergerStats& sensing(int l) const;
    void check_beamformer(const CMat& w) const;

    const ScenarioStats* stats_;
};

} // namespace isac
