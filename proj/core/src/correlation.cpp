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

#include "isac/correlation.hpp"
#include "isac/errors.hpp"

#include <string>

namespace isac {

namespace {

void require_shape(const CMat& c, Eigen::Index n, const char* what) {
    if (c.rows() != n || c.cols() != n)
        throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                             std::to_string(n) + " input, got " + std::to_string(c.rows()) + "x" +
                             std::to_string(c.cols()));
}

// U diag(d) U^H, Hermitian by construction.
CMat congruence(const CMat& u, const RVec& d) {
    CMat out = u * d.cast<cplx>().asDiagonal() * u.adjoint();
    return 0.5 * (out + out.adjoint());
}

} // namespace

CMat left_correlation(const WeichselbergerStats& s, const CMat& c) {
    require_shape(c, s.rows(), "left correlation");
    const CMat ch = hermitize(c, "left correlation");
    const RVec a = (s.left_unitary.adjoint() * ch * s.left_unitary).diagonal().real();
    const RVec d = s.variance_profile.cwiseAbs2().transpose() * a;
    return congruence(s.right_unitary, d / static_cast<double>(s.cols()));
}

CMat right_correlation(const WeichselbergerStats& s, const CMat& c) {
    require_shape(c, s.cols(), "right correlation");
    const CMat ch = hermitize(c, "right correlation");
    const RVec a = (s.right_unitary.adjoint() * ch * s.right_unitary).diagonal().real();
    const RVec d = s.variance_profile.cwiseAbs2() * a;
    return congruence(s.left_unitary, d / static_cast<double>(s.cols()));
}

const WeichselbergerStats& CorrelationOps::sensing(int l) const {
    if (l < 0 || l >= static_cast<int>(stats_->sensing.size()))
        throw DimensionError("scatterer index out of range");
    return stats_->sensing[static_cast<std::size_t>(l)];
}

void CorrelationOps::check_beamformer(const CMat& w) const {
    if (w.rows() != stats_->dims.n_t)
        throw DimensionError("beamformer must have N_t rows");
}

CMat CorrelationOps::eta(int l, const CMat& c) const { return left_correlation(sensing(l), c); }

CMat CorrelationOps::eta_tilde(int l, const CMat& c) const {
    return right_correlation(sensing(l), c);
}

CMat CorrelationOps::tau(const CMat& e) const { return left_correlation(stats_->comm, e); }

CMat CorrelationOps::tau_tilde(const CMat& e) const { return right_correlation(stats_->comm, e); }

CMat CorrelationOps::zeta(const CMat& d) const {
    const auto& dims = stats_->dims;
    require_shape(d, dims.m, "zeta");
    const double tr = hermitize(d, "zeta").trace().real();
    return CMat::Identity(dims.n_s, dims.n_s) * (tr / dims.n_s);
}

CMat CorrelationOps::zeta_tilde(const CMat& d) const {
    const auto& dims = stats_->dims;
    require_shape(d, dims.n_s, "zeta_tilde");
    const double tr = hermitize(d, "zeta_tilde").trace().real();
    return CMat::Identity(dims.m, dims.m) * (tr / dims.n_s);
}

CMat CorrelationOps::eta_w(int l, const CMat& c, const CMat& w) const {
    check_beamformer(w);
    CMat out = w.adjoint() * eta(l, c) * w;
    return 0.5 * (out + out.adjoint());
}

CMat CorrelationOps::eta_tilde_w(int l, const CMat& c, const CMat& w) const {
    check_beamformer(w);
    require_shape(c, w.cols(), "eta_tilde_w");
    const CMat p = w * hermitize(c, "eta_tilde_w") * w.adjoint();
    return eta_tilde(l, 0.5 * (p + p.adjoint()));
}

CMat CorrelationOps::tau_w(const CMat& e, const CMat& w) const {
    check_beamformer(w);
    CMat out = w.adjoint() * tau(e) * w;
    return 0.5 * (out + out.adjoint());
}

CMat CorrelationOps::tau_tilde_w(const CMat& e, const CMat& w) const {
    check_beamformer(w);
    require_shape(e, w.cols(), "tau_tilde_w");
    const CMat p = w * hermitize(e, "tau_tilde_w") * w.adjoint();
    return tau_tilde(0.5 * (p + p.adjoint()));
}

} // namespace isac
