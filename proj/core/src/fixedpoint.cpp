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

#include "isac/fixedpoint.hpp"
#include "isac/correlation.hpp"
#include "isac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace isac {

namespace {

CMat herm(const CMat& a) { return 0.5 * (a + a.adjoint()); }

CMat scalar_matrix(double s, Eigen::Index n) { return CMat::Identity(n, n) * s; }

double scalar_change(double lhs, double rhs) { return std::abs(lhs - rhs) / (1.0 + std::abs(rhs)); }

void check_inputs(const ScenarioStats& stats, const Beamformer& bf) {
    validate(stats.dims);
    if (bf.w.rows() != stats.dims.n_t || bf.w.cols() != stats.dims.m)
        throw DimensionError("beamformer must be N_t x M");
    if (static_cast<int>(stats.sensing.size()) != stats.dims.num_scatter)
        throw DimensionError("sensing channel count differs from L");
}

// ---------------------------------------------------------------- sensing

// Iterated unknowns. G_D~ is a multiple of I_{N_s}.
struct SensingState {
    CMat g_c_tilde;
    CMat g_c;
    CMat g_d;
    double g_d_tilde = 1.0;
};

// Auxiliary matrices built from one state, and the right-hand sides of the
// four resolvent equations evaluated there.
struct SensingEval {
    std::vector<CMat> psi_tilde_blocks;
    CMat psi_tilde_inv;
    CMat psi;
    double phi_tilde = -1.0;
    double phi = 1.0;
    CMat pi;
    SensingState rhs;
};

SensingEval evaluate_sensing(const ScenarioStats& stats, const CMat& w_bf, const CMat& g_eff,
                             double w, const SensingState& x) {
    const auto& dims = stats.dims;
    const int nr = dims.n_r;
    const int lnr = dims.sensing_rows();
    const int m = dims.m;
    const CorrelationOps ops(stats);

    SensingEval e;
    e.psi_tilde_blocks.reserve(dims.num_scatter);
    e.psi_tilde_inv = CMat::Zero(lnr, lnr);
    CMat psi_tilde = CMat::Zero(lnr, lnr);
    e.psi = CMat::Zero(m, m);
    for (int l = 0; l < dims.num_scatter; ++l) {
        CMat block = scalar_matrix(w, nr) - ops.eta_tilde_w(l, x.g_c, w_bf);
        e.psi_tilde_inv.block(l * nr, l * nr, nr, nr) = hermitian_inverse(block, "Psi~ block");
        psi_tilde.block(l * nr, l * nr, nr, nr) = block;
        e.psi_tilde_blocks.push_back(std::move(block));
        e.psi -= ops.eta_w(l, herm(x.g_c_tilde.block(l * nr, l * nr, nr, nr)), w_bf);
    }
    // zeta~(g I_{N_s}) = g I_M and zeta(G_D) = Tr(G_D)/N_s I_{N_s}.
    e.phi_tilde = -x.g_d_tilde;
    e.phi = 1.0 - x.g_d.trace().real() / dims.n_s;
    if (!(e.phi_tilde < 0.0) || !std::isfinite(e.phi_tilde))
        throw SingularMatrixError("Phi~ = -zeta~(G_D~)", std::abs(e.phi_tilde));
    if (!(e.phi > 0.0) || !std::isfinite(e.phi))
        throw SingularMatrixError("Phi = I - zeta(G_D)", std::abs(e.phi));

    const double inv_phi_tilde = 1.0 / e.phi_tilde;
    e.pi = e.psi - scalar_matrix(inv_phi_tilde, m);

    const CMat pi_inv = hermitian_inverse(e.pi, "Pi = Psi - Phi~^{-1}");
    e.rhs.g_c_tilde = hermitian_inverse(herm(psi_tilde - g_eff * pi_inv * g_eff.adjoint()),
                                        "G_C~ = (Psi~ - G Pi^{-1} G^H)^{-1}");

    // Delta = Psi - G^H Psi~^{-1} G, the Schur complement shared by G_C and G_D.
    const CMat delta = herm(e.psi - g_eff.adjoint() * e.psi_tilde_inv * g_eff);
    e.rhs.g_c = hermitian_inverse(herm(delta - scalar_matrix(inv_phi_tilde, m)),
                                  "G_C = (Psi - G^H Psi~^{-1} G - Phi~^{-1})^{-1}");
    e.rhs.g_d_tilde = 1.0 / e.phi;
    // (Phi~ - Delta^{-1})^{-1} = Delta (Phi~ Delta - I)^{-1}; Phi~ is scalar so the
    // factors commute and Delta itself never has to be inverted.
    e.rhs.g_d = herm(delta * hermitian_inverse(herm(e.phi_tilde * delta - CMat::Identity(m, m)),
                                               "G_D = (Phi~ - Delta^{-1})^{-1}"));
    return e;
}

double sensing_change(const SensingState& x, const SensingState& rhs) {
    return std::max({relative_change(x.g_c_tilde, rhs.g_c_tilde), relative_change(x.g_c, rhs.g_c),
                     relative_change(x.g_d, rhs.g_d), scalar_change(x.g_d_tilde, rhs.g_d_tilde)});
}

SensingFixedPoint package(const SensingState& x, const SensingEval& e, double w, double res,
                          int iterations) {
    SensingFixedPoint fp;
    fp.w = w;
    fp.g_c_tilde = x.g_c_tilde;
    fp.g_c = x.g_c;
    fp.g_d_scalar = x.g_d_tilde;
    fp.g_dd = x.g_d;
    fp.psi_tilde_blocks = e.psi_tilde_blocks;
    fp.psi = e.psi;
    fp.phi_tilde_scalar = e.phi_tilde;
    fp.phi_scalar = e.phi;
    fp.pi = e.pi;
    fp.residual = res;
    fp.iterations = iterations;
    return fp;
}

// ---------------------------------------------------------- communication

struct CommState {
    CMat g_e_tilde;
    CMat g_e;
};

struct CommEval {
    CMat omega_tilde;
    CMat omega;
    CommState rhs;
};

CommEval evaluate_comm(const ScenarioStats& stats, const CMat& w_bf, const CMat& h_eff, double w,
                       const CommState& x) {
    const int nu = stats.dims.n_u;
    const int m = stats.dims.m;
    const CorrelationOps ops(stats);

    CommEval e;
    e.omega_tilde = scalar_matrix(w, nu) - ops.tau_tilde_w(x.g_e, w_bf);
    e.omega = CMat::Identity(m, m) - ops.tau_w(herm(x.g_e_tilde), w_bf);
    const CMat omega_inv = hermitian_inverse(e.omega, "Omega = I - tau(G_E~)");
    const CMat omega_tilde_inv = hermitian_inverse(e.omega_tilde, "Omega~ = wI - tau~(G_E)");
    e.rhs.g_e_tilde = hermitian_inverse(herm(e.omega_tilde - h_eff * omega_inv * h_eff.adjoint()),
                                        "G_E~ = (Omega~ - H Omega^{-1} H^H)^{-1}");
    e.rhs.g_e = hermitian_inverse(herm(e.omega - h_eff.adjoint() * omega_tilde_inv * h_eff),
                                  "G_E = (Omega - H^H Omega~^{-1} H)^{-1}");
    return e;
}

double comm_change(const CommState& x, const CommState& rhs) {
    return std::max(relative_change(x.g_e_tilde, rhs.g_e_tilde), relative_change(x.g_e, rhs.g_e));
}

void trace_header(const SolverOptions& opts) {
    if (opts.trace)
        *opts.trace << "iteration,residual\n";
}

void trace_row(const SolverOptions& opts, int it, double res) {
    if (opts.trace)
        *opts.trace << it << ',' << res << '\n';
}

} // namespace

void SolverOptions::validate() const {
    if (!(tol > 0.0))
        throw ParameterError("solver tolerance must be positive");
    if (max_iter < 1)
        throw ParameterError("solver needs at least one iteration");
    if (!(damping > 0.0 && damping <= 1.0))
        throw ParameterError("damping must lie in (0, 1]");
}

SpectralPoint SpectralPoint::from_noise_power(double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw ParameterError("noise power must be positive and finite");
    return SpectralPoint{-sigma2};
}

CMat SensingFixedPoint::psi_tilde() const {
    Eigen::Index n = 0;
    for (const auto& b : psi_tilde_blocks)
        n += b.rows();
    CMat out = CMat::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& b : psi_tilde_blocks) {
        out.block(off, off, b.rows(), b.cols()) = b;
        off += b.rows();
    }
    return out;
}

CMat SensingFixedPoint::psi_tilde_inverse() const {
    CMat out = CMat::Zero(g_c_tilde.rows(), g_c_tilde.cols());
    Eigen::Index off = 0;
    for (const auto& b : psi_tilde_blocks) {
        out.block(off, off, b.rows(), b.cols()) = hermitian_inverse(b, "Psi~ block");
        off += b.rows();
    }
    return out;
}

CMat SensingFixedPoint::g_c_tilde_block(int l) const {
    if (psi_tilde_blocks.empty() || l < 0 || l >= static_cast<int>(psi_tilde_blocks.size()))
        throw DimensionError("scatterer index out of range");
    const Eigen::Index nr = psi_tilde_blocks.front().rows();
    return g_c_tilde.block(l * nr, l * nr, nr, nr);
}

SensingFixedPoint solve_sensing(const ScenarioStats& stats, const Beamformer& bf,
                                SpectralPoint point, const SolverOptions& opts) {
    opts.validate();
    check_inputs(stats, bf);
    if (!(point.w < 0.0))
        throw ParameterError("spectral argument must be negative");

    const auto& dims = stats.dims;
    const double w = point.w;
    const CMat g_eff = stacked_sensing_mean(stats) * bf.w;

    // Zero-channel solution.
    SensingState x;
    x.g_c_tilde = scalar_matrix(1.0 / w, dims.sensing_rows());
    x.g_c = CMat::Identity(dims.m, dims.m);
    x.g_d = CMat::Zero(dims.m, dims.m);
    x.g_d_tilde = 1.0;

    const double a = opts.damping;
    trace_header(opts);
    for (int it = 0; it < opts.max_iter; ++it) {
        SensingEval e = evaluate_sensing(stats, bf.w, g_eff, w, x);
        const double res = sensing_change(x, e.rhs);
        trace_row(opts, it, res);
        if (!std::isfinite(res))
            throw NumericalError("sensing fixed point produced a non-finite iterate");
        if (res <= opts.tol)
            return package(x, e, w, res, it);
        x.g_c_tilde = (1.0 - a) * x.g_c_tilde + a * e.rhs.g_c_tilde;
        x.g_c = (1.0 - a) * x.g_c + a * e.rhs.g_c;
        x.g_d = (1.0 - a) * x.g_d + a * e.rhs.g_d;
        x.g_d_tilde = (1.0 - a) * x.g_d_tilde + a * e.rhs.g_d_tilde;
    }
    const SensingEval e = evaluate_sensing(stats, bf.w, g_eff, w, x);
    throw NonConvergenceError("sensing", opts.max_iter, sensing_change(x, e.rhs));
}

CommFixedPoint solve_comm(const ScenarioStats& stats, const Beamformer& bf, SpectralPoint point,
                          const SolverOptions& opts) {
    opts.validate();
    check_inputs(stats, bf);
    if (!(point.w < 0.0))
        throw ParameterError("spectral argument must be negative");

    const auto& dims = stats.dims;
    const double w = point.w;
    const CMat h_eff = stats.comm.mean * bf.w;

    CommState x;
    x.g_e_tilde = scalar_matrix(1.0 / w, dims.n_u);
    x.g_e = CMat::Identity(dims.m, dims.m);

    const double a = opts.damping;
    trace_header(opts);
    for (int it = 0; it < opts.max_iter; ++it) {
        CommEval e = evaluate_comm(stats, bf.w, h_eff, w, x);
        const double res = comm_change(x, e.rhs);
        trace_row(opts, it, res);
        if (!std::isfinite(res))
            throw NumericalError("communication fixed point produced a non-finite iterate");
        if (res <= opts.tol) {
            CommFixedPoint fp;
            fp.w = w;
            fp.g_e_tilde = x.g_e_tilde;
            fp.g_e = x.g_e;
            fp.omega_tilde = e.omega_tilde;
            fp.omega = e.omega;
            fp.residual = res;
            fp.iterations = it;
            return fp;
        }
        x.g_e_tilde = (1.0 - a) * x.g_e_tilde + a * e.rhs.g_e_tilde;
        x.g_e = (1.0 - a) * x.g_e + a * e.rhs.g_e;
    }
    const CommEval e = evaluate_comm(stats, bf.w, h_eff, w, x);
    throw NonConvergenceError("communication", opts.max_iter, comm_change(x, e.rhs));
}

double residual(const ScenarioStats& stats, const Beamformer& bf, const SensingFixedPoint& fp) {
    check_inputs(stats, bf);
    const CMat g_eff = stacked_sensing_mean(stats) * bf.w;
    const SensingState x{fp.g_c_tilde, fp.g_c, fp.g_dd, fp.g_d_scalar};
    const SensingEval e = evaluate_sensing(stats, bf.w, g_eff, fp.w, x);
    return sensing_change(x, e.rhs);
}

double residual(const ScenarioStats& stats, const Beamformer& bf, const CommFixedPoint& fp) {
    check_inputs(stats, bf);
    const CMat h_eff = stats.comm.mean * bf.w;
    const CommState x{fp.g_e_tilde, fp.g_e};
    const CommEval e = evaluate_comm(stats, bf.w, h_eff, fp.w, x);
    return comm_change(x, e.rhs);
}

} // namespace isac
