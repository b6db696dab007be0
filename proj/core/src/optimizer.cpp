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

#include "isac/optimizer.hpp"
#include "isac/correlation.hpp"
#include "isac/random.hpp"

#include <cmath>

namespace isac {

namespace {

constexpr std::uint64_t kInitTag = 0xB3A4'F0A1;

void check_spectral(double fp_w, double sigma2, const char* what) {
    if (std::abs(fp_w + sigma2) > 1e-12 * sigma2)
        throw ParameterError(std::string(what) + " fixed point was solved at another noise power");
}

// Re Tr(A^H B)
double real_inner(const CMat& a, const CMat& b) { return (a.adjoint() * b).trace().real(); }

} // namespace

void PgaOptions::validate() const {
    if (!(epsilon > 0.0))
        throw ParameterError("PGA epsilon must be positive");
    if (max_outer_iters < 0)
        throw ParameterError("PGA iteration budget must be nonnegative");
    if (step_rule == StepRule::fixed && !(fixed_step > 0.0))
        throw ParameterError("fixed PGA step must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw ParameterError("backtracking shrink factor must lie in (0, 1)");
    if (!(armijo >= 0.0 && armijo < 1.0))
        throw ParameterError("Armijo slope must lie in [0, 1)");
    if (!(min_step > 0.0))
        throw ParameterError("minimum step must be positive");
    solver.validate();
}

std::string PgaTrace::to_csv() const {
    std::string out = "iter,weighted_bits,step,grad_norm\n";
    for (const auto& r : rows)
        out += std::to_string(r.iter) + ',' + format_number(nats_to_bits(r.weighted)) + ',' +
               format_number(r.step) + ',' + format_number(r.grad_norm) + '\n';
    return out;
}

CMat gradient(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
              double rho, const SensingFixedPoint& fp_s, const CommFixedPoint& fp_c,
              double max_residual) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ParameterError("rho must lie in [0, 1]");
    const auto& dims = stats.dims;
    if (bf.w.rows() != dims.n_t || bf.w.cols() != dims.m)
        throw DimensionError("beamformer must be N_t x M");
    if (fp_s.g_c.rows() != dims.m || fp_s.g_c_tilde.rows() != dims.sensing_rows() ||
        fp_c.g_e.rows() != dims.m || fp_c.g_e_tilde.rows() != dims.n_u)
        throw DimensionError("fixed point shapes disagree with the scenario");
    check_spectral(fp_s.w, noise.sigma_s2(), "sensing");
    check_spectral(fp_c.w, noise.sigma_c2(), "communication");
    if (!(residual(stats, bf, fp_s) <= max_residual))
        throw NumericalError("sensing fixed point is not converged at this beamformer");
    if (!(residual(stats, bf, fp_c) <= max_residual))
        throw NumericalError("communication fixed point is not converged at this beamformer");

    const CorrelationOps ops(stats);
    CMat grad = CMat::Zero(dims.n_t, dims.m);
    if (rho > 0.0) {
        const CMat g_raw = stacked_sensing_mean(stats);
        CMat a = g_raw.adjoint() * fp_s.psi_tilde_inverse() * g_raw;
        for (int l = 0; l < dims.num_scatter; ++l)
            a += ops.eta(l, fp_s.g_c_tilde_block(l));
        grad += -2.0 * rho * a * bf.w * fp_s.g_c;
    }
    if (rho < 1.0) {
        const CMat& h = stats.comm.mean;
        const CMat a = h.adjoint() * hermitian_inverse(fp_c.omega_tilde, "Omega~") * h +
                       ops.tau(fp_c.g_e_tilde);
        grad += -2.0 * (1.0 - rho) * a * bf.w * fp_c.g_e;
    }
    return grad;
}

CMat project(const CMat& w, double p_t) {
    if (!(p_t > 0.0))
        throw ParameterError("power budget must be positive");
    const double n2 = w.squaredNorm();
    if (n2 <= p_t)
        return w;
    CMat out = w * std::sqrt(p_t / n2);
    // Rounding can leave the norm a few ulps above the budget.
    while (out.squaredNorm() > p_t)
        out *= 1.0 - 1e-15;
    return out;
}

PgaResult pga(const ScenarioStats& stats, const NoiseConfig& noise, double rho, double p_t,
              const PgaOptions& opts) {
    opts.validate();
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ParameterError("rho must lie in [0, 1]");
    if (!(p_t > 0.0))
        throw ParameterError("power budget must be positive");
    const auto& dims = stats.dims;
    validate(dims);

    CMat w0;
    if (opts.initial) {
        if (opts.initial->rows() != dims.n_t || opts.initial->cols() != dims.m)
            throw DimensionError("initial beamformer must be N_t x M");
        w0 = project(*opts.initial, p_t);
    } else {
        auto rng = make_stream(opts.seed, kInitTag);
        w0 = project(complex_gaussian(dims.n_t, dims.m, 1.0, rng), p_t);
    }

    PgaResult res;
    auto evaluate = [&](const CMat& w) {
        try {
            return evaluate_mi(stats, Beamformer{w, p_t}, noise, rho, opts.solver);
        } catch (const NumericalError& e) {
            throw PgaAborted(e.what(), res.trace);
        }
    };
    auto grad_at = [&](const CMat& w, const MiEvaluation& ev) {
        try {
            return gradient(stats, Beamformer{w, p_t}, noise, rho, ev.sensing, ev.comm,
                            std::max(1e-8, 10.0 * opts.solver.tol));
        } catch (const NumericalError& e) {
            throw PgaAborted(e.what(), res.trace);
        }
    };

    CMat w = w0;
    MiEvaluation cur = evaluate(w);
    CMat g = grad_at(w, cur);
    res.trace.rows.push_back({0, cur.report.weighted, 0.0, g.norm(), w.squaredNorm() <= p_t});

    res.stop = PgaStop::max_iterations;
    for (int it = 1; it <= opts.max_outer_iters; ++it) {
        const double gn = g.norm();
        if (gn == 0.0) {
            res.stop = PgaStop::stationary;
            break;
        }
        double lambda = opts.step_rule == StepRule::fixed ? opts.fixed_step
                                                          : std::sqrt(p_t) / (1.0 + gn);
        CMat w_new;
        MiEvaluation next;
        bool accepted = false;
        for (;;) {
            w_new = project(w + lambda * g, p_t);
            next = evaluate(w_new);
            if (opts.step_rule == StepRule::fixed ||
                next.report.weighted >=
                    cur.report.weighted + opts.armijo * real_inner(g, w_new - w)) {
                accepted = true;
                break;
            }
            lambda *= opts.shrink;
            if (lambda < opts.min_step)
                break;
        }
        if (!accepted) {
            res.stop = PgaStop::step_underflow;
            break;
        }
        const double prev = cur.report.weighted;
        w = std::move(w_new);
        cur = std::move(next);
        g = grad_at(w, cur);
        res.trace.rows.push_back({it, cur.report.weighted, lambda, g.norm(), w.squaredNorm() <= p_t});
        if (std::abs(cur.report.weighted - prev) <= opts.epsilon) {
            res.stop = PgaStop::tolerance;
            break;
        }
    }
    res.beamformer = Beamformer{w, p_t};
    res.report = cur.report;
    return res;
}

} // namespace isac
