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

#include "isac/mi.hpp"
#include "isac/errors.hpp"

#include <cmath>
#include <cstdio>

namespace isac {

namespace {

void check_rho(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ParameterError("rho must lie in [0, 1]");
}

void check_point(double fp_w, SpectralPoint point) {
    if (!(point.w < 0.0))
        throw ParameterError("spectral argument must be negative");
    if (std::abs(fp_w - point.w) > 1e-12 * std::abs(point.w))
        throw ParameterError("fixed point was solved at a different spectral argument");
}

// log det of a matrix that must be positive definite; anything else means the
// terms cannot combine into a real value.
double positive_logdet(const CMat& a, const char* what) {
    const SignedLogDet d = hermitian_logdet(a, what);
    if (d.sign != 1)
        throw NumericalError(std::string("Shannon transform is not real: ") + what +
                             " is not positive definite");
    return d.log_abs;
}

} // namespace

double shannon_sensing(const SensingFixedPoint& fp, SpectralPoint point, const SystemDims& dims,
                       const CMat& g_eff) {
    check_point(fp.w, point);
    const double w = point.w;
    const int lnr = dims.sensing_rows();
    const int m = dims.m;
    if (g_eff.rows() != lnr || g_eff.cols() != m || fp.g_c_tilde.rows() != lnr ||
        fp.g_c.rows() != m)
        throw DimensionError("fixed point and effective channel shapes disagree with dims");
    if (!(fp.phi_tilde_scalar < 0.0) || !(fp.phi_scalar > 0.0))
        throw NumericalError("Shannon transform is not real: Phi~ or Phi has the wrong sign");

    double v = 0.0;
    for (const auto& b : fp.psi_tilde_blocks)
        v += positive_logdet(b / w, "Psi~/w");

    // logdet(Delta - Phi~^{-1}) + logdet(Phi~) has a constant phase i pi M because
    // Phi~ = phi~ I_M is negative. Their real part is logdet(I - phi~ Delta),
    // which is positive definite.
    const CMat delta = fp.psi - g_eff.adjoint() * fp.psi_tilde_inverse() * g_eff;
    const CMat paired = CMat::Identity(m, m) - fp.phi_tilde_scalar * delta;
    v += positive_logdet(0.5 * (paired + paired.adjoint()), "I - Phi~ Delta");

    const CMat psi_tilde = fp.psi_tilde();
    v += (fp.g_c_tilde * (w * CMat::Identity(lnr, lnr) - psi_tilde)).trace().real();
    v += fp.g_d_scalar * fp.g_dd.trace().real();
    v += dims.n_s * std::log(fp.phi_scalar);
    return v / lnr;
}

double shannon_comm(const CommFixedPoint& fp, SpectralPoint point, const SystemDims& dims,
                    const CMat& h_eff) {
    check_point(fp.w, point);
    const double w = point.w;
    const int nu = dims.n_u;
    if (h_eff.rows() != nu || h_eff.cols() != dims.m || fp.g_e_tilde.rows() != nu ||
        fp.g_e.rows() != dims.m)
        throw DimensionError("fixed point and effective channel shapes disagree with dims");

    double v = positive_logdet(fp.omega_tilde / w, "Omega~/w");
    v += (fp.g_e_tilde * (w * CMat::Identity(nu, nu) - fp.omega_tilde)).trace().real();
    // -logdet(G_E) through its defining inverse, so the term does not carry
    // the iterate's own convergence error.
    const CMat schur = fp.omega - h_eff.adjoint() * hermitian_inverse(fp.omega_tilde, "Omega~") * h_eff;
    v += positive_logdet(0.5 * (schur + schur.adjoint()), "Omega - H^H Omega~^{-1} H");
    return v / nu;
}

double cauchy_sensing(const SensingFixedPoint& fp) {
    return fp.g_c_tilde.trace().real() / static_cast<double>(fp.g_c_tilde.rows());
}

double cauchy_comm(const CommFixedPoint& fp) {
    return fp.g_e_tilde.trace().real() / static_cast<double>(fp.g_e_tilde.rows());
}

MiEvaluation evaluate_mi(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
                         double rho, const SolverOptions& opts) {
    check_rho(rho);
    const auto& dims = stats.dims;
    const EffectiveLos los = effective_los(stats, bf.w);
    const SpectralPoint ps = SpectralPoint::from_noise_power(noise.sigma_s2());
    const SpectralPoint pc = SpectralPoint::from_noise_power(noise.sigma_c2());

    MiEvaluation out;
    out.sensing = solve_sensing(stats, bf, ps, opts);
    out.comm = solve_comm(stats, bf, pc, opts);

    MiReport& r = out.report;
    r.rho = rho;
    r.i_s = dims.sensing_rows() * shannon_sensing(out.sensing, ps, dims, los.g_eff);
    r.i_c = dims.n_u * shannon_comm(out.comm, pc, dims, los.h_eff);
    r.weighted = rho * r.i_s + (1.0 - rho) * r.i_c;
    r.residual_s = out.sensing.residual;
    r.residual_c = out.comm.residual;
    r.iters_s = out.sensing.iterations;
    r.iters_c = out.comm.iterations;
    return out;
}

MiReport weighted_mi(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
                     double rho, const SolverOptions& opts) {
    return evaluate_mi(stats, bf, noise, rho, opts).report;
}

double derivative_identity_check(const ScenarioStats& stats, const Beamformer& bf,
                                 const NoiseConfig& noise, Branch branch, double h,
                                 const SolverOptions& opts) {
    if (!(h > 0.0))
        throw ParameterError("finite-difference step must be positive");
    const double s2 = branch == Branch::sensing ? noise.sigma_s2() : noise.sigma_c2();
    if (!(h < s2))
        throw ParameterError("finite-difference step must be smaller than the noise power");
    const EffectiveLos los = effective_los(stats, bf.w);

    auto shannon = [&](double sigma2) {
        const SpectralPoint p = SpectralPoint::from_noise_power(sigma2);
        if (branch == Branch::sensing)
            return shannon_sensing(solve_sensing(stats, bf, p, opts), p, stats.dims, los.g_eff);
        return shannon_comm(solve_comm(stats, bf, p, opts), p, stats.dims, los.h_eff);
    };
    const SpectralPoint p0 = SpectralPoint::from_noise_power(s2);
    const double g = branch == Branch::sensing ? cauchy_sensing(solve_sensing(stats, bf, p0, opts))
                                               : cauchy_comm(solve_comm(stats, bf, p0, opts));
    const double dv = (shannon(s2 + h) - shannon(s2 - h)) / (2.0 * h);
    return std::abs(dv + 1.0 / s2 + g);
}

std::string format_number(double v) {
    if (v == 0.0)
        v = 0.0; // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string mi_csv_header() {
    return "snr_db,rho,i_s_bits,i_c_bits,weighted_bits,residual_s,residual_c,iters_s,iters_c";
}

std::string mi_csv_row(const MiReport& r, double snr_db) {
    return format_number(snr_db) + ',' + format_number(r.rho) + ',' +
           format_number(nats_to_bits(r.i_s)) + ',' + format_number(nats_to_bits(r.i_c)) + ',' +
           format_number(nats_to_bits(r.weighted)) + ',' + format_number(r.residual_s) + ',' +
           format_number(r.residual_c) + ',' + std::to_string(r.iters_s) + ',' +
           std::to_string(r.iters_c);
}

} // namespace isac
