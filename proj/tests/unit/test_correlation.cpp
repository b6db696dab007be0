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

#include <doctest.h>

#include "isac/correlation.hpp"
#include "isac/errors.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

using namespace isac;
using namespace isac::testing;

namespace {

// Entrywise agreement threshold in standard errors. A matrix check compares
// up to 32 real numbers, so 4 sigma keeps the family-wise false alarm rate
// near that of one 3 sigma test; scalar probes use 3 sigma.
constexpr double kEntryZ = 4.0;
constexpr double kProbeZ = 3.0;
constexpr int kDraws = 100000;

ScenarioStats identity_stats(int n_t, int n_r, int n_u) {
    ScenarioStats s;
    s.dims = SystemDims{n_t, n_r, n_u, 1, 1, 1};
    auto chan = [](int rows, int cols) {
        WeichselbergerStats w;
        w.mean = CMat::Zero(rows, cols);
        w.left_unitary = CMat::Identity(rows, rows);
        w.right_unitary = CMat::Identity(cols, cols);
        w.variance_profile = RMat::Ones(rows, cols);
        return w;
    };
    s.comm = chan(n_u, n_t);
    s.sensing = {chan(n_r, n_t)};
    return s;
}

CMat sample_symbols_ref(int m, int n_s, std::mt19937_64& rng) {
    return random_complex(m, n_s, rng) / std::sqrt(static_cast<double>(n_s));
}

void check_mc(const std::function<CMat()>& draw, const CMat& expected, const CMat& probe) {
    const MatrixMoments mm = sample_moments(draw, kDraws);
    CHECK(mm.max_z(expected) < kEntryZ);
    // Same draws are not reused: a fresh pass for the scalar statistic.
    const ScalarMoments pm = probe_moments(draw, probe, kDraws);
    CHECK(std::abs(pm.mean - (probe * expected).trace().real()) < kProbeZ * pm.se + 1e-14);
}

double min_eig(const CMat& a) {
    return Eigen::SelfAdjointEigenSolver<CMat>(a, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

} // namespace

TEST_CASE("closed-form examples on identity statistics") {
    const ScenarioStats s = identity_stats(3, 2, 4);
    const CorrelationOps ops(s);
    CHECK((ops.eta(0, CMat::Identity(2, 2)) - (2.0 / 3.0) * CMat::Identity(3, 3)).norm() < 1e-15);
    CHECK((ops.eta_tilde(0, CMat::Identity(3, 3)) - CMat::Identity(2, 2)).norm() < 1e-15);
    CHECK((ops.tau(CMat::Identity(4, 4)) - (4.0 / 3.0) * CMat::Identity(3, 3)).norm() < 1e-15);
    CHECK((ops.tau_tilde(CMat::Identity(3, 3)) - CMat::Identity(4, 4)).norm() < 1e-15);
    CHECK(ops.eta(0, CMat::Zero(2, 2)).isZero(0.0));
    CHECK(ops.eta_tilde(0, CMat::Zero(3, 3)).isZero(0.0));
    CHECK(ops.tau(CMat::Zero(4, 4)).isZero(0.0));
    CHECK(ops.tau_tilde(CMat::Zero(3, 3)).isZero(0.0));
}

TEST_CASE("symbol operators") {
    ScenarioStats s = identity_stats(4, 1, 1);
    s.dims.m = 4;
    s.dims.n_s = 4;
    CHECK((CorrelationOps(s).zeta(CMat::Identity(4, 4)) - CMat::Identity(4, 4)).norm() < 1e-15);

    s.dims.m = 3;
    s.dims.n_s = 2;
    CMat d = CMat::Zero(3, 3);
    d.diagonal() << 1.0, 2.0, 3.0;
    const CorrelationOps ops(s);
    CHECK((ops.zeta(d) - 3.0 * CMat::Identity(2, 2)).norm() < 1e-15);
    CHECK(ops.zeta(CMat::Zero(3, 3)).isZero(0.0));
    CHECK((ops.zeta_tilde(CMat::Identity(2, 2)) - CMat::Identity(3, 3)).norm() < 1e-15);
    CHECK_THROWS_AS(ops.zeta(CMat::Zero(2, 2)), DimensionError);
}

TEST_CASE("beamformed variants") {
    const ScenarioStats s = random_scenario(SystemDims{4, 3, 2, 2, 4, 3}, 31);
    const CorrelationOps ops(s);
    std::mt19937_64 rng(32);
    const CMat c_r = random_hermitian(3, rng);
    const CMat c_m = random_hermitian(4, rng);
    const CMat e_u = random_hermitian(2, rng);
    const CMat id = CMat::Identity(4, 4);
    CHECK((ops.eta_w(1, c_r, id) - ops.eta(1, c_r)).norm() < 1e-14);
    CHECK((ops.eta_tilde_w(1, c_m, id) - ops.eta_tilde(1, c_m)).norm() < 1e-14);
    CHECK((ops.tau_w(e_u, id) - ops.tau(e_u)).norm() < 1e-14);
    CHECK((ops.tau_tilde_w(c_m, id) - ops.tau_tilde(c_m)).norm() < 1e-14);

    const CMat zero = CMat::Zero(4, 2);
    CHECK(ops.eta_w(0, c_r, zero).isZero(0.0));
    CHECK(ops.eta_tilde_w(0, CMat::Identity(2, 2), zero).isZero(0.0));
    CHECK(ops.tau_w(e_u, zero).isZero(0.0));
    CHECK(ops.tau_tilde_w(CMat::Identity(2, 2), zero).isZero(0.0));
    CHECK_THROWS_AS(ops.eta_w(0, c_r, CMat::Zero(3, 2)), DimensionError);
}

TEST_CASE("input checks") {
    const ScenarioStats s = random_scenario(SystemDims{4, 3, 2, 2, 4, 3}, 33);
    const CorrelationOps ops(s);
    CHECK_THROWS_AS(ops.eta(0, CMat::Identity(4, 4)), DimensionError);
    CHECK_THROWS_AS(ops.eta(2, CMat::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(ops.tau_tilde(CMat::Identity(2, 2)), DimensionError);
    CMat skew = CMat::Zero(3, 3);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(ops.eta(0, skew), DimensionError);
}

TEST_CASE("linearity, positivity, Hermitian output, trace duality") {
    const SystemDims dims{4, 3, 5, 2, 3, 2};
    const ScenarioStats s = random_scenario(dims, 41);
    const CorrelationOps ops(s);
    std::mt19937_64 rng(42);

    struct Op {
        const char* name;
        Eigen::Index in;
        std::function<CMat(const CMat&)> f;
    };
    const std::vector<Op> base{
        {"eta", 3, [&](const CMat& c) { return ops.eta(1, c); }},
        {"eta_tilde", 4, [&](const CMat& c) { return ops.eta_tilde(1, c); }},
        {"tau", 5, [&](const CMat& c) { return ops.tau(c); }},
        {"tau_tilde", 4, [&](const CMat& c) { return ops.tau_tilde(c); }},
        {"zeta", 3, [&](const CMat& c) { return ops.zeta(c); }},
        {"zeta_tilde", 2, [&](const CMat& c) { return ops.zeta_tilde(c); }},
    };
    for (const auto& op : base) {
        CAPTURE(op.name);
        const CMat a = random_hermitian(op.in, rng);
        const CMat b = random_hermitian(op.in, rng);
        const double alpha = 0.7, beta = -1.3;
        const CMat lhs = op.f(alpha * a + beta * b);
        const CMat rhs = alpha * op.f(a) + beta * op.f(b);
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        CHECK(hermitian_defect(op.f(a)) <= 1e-12);
        CHECK(min_eig(op.f(random_psd(op.in, rng))) >= -1e-10);
    }

    auto dual = [](const CMat& a, const CMat& fa, const CMat& b, const CMat& gb) {
        const cplx l = (a * gb).trace();
        const cplx r = (b * fa).trace();
        return std::abs(l - r) / std::max(1.0, std::abs(l));
    };
    for (int l = 0; l < 2; ++l) {
        const CMat a = random_hermitian(4, rng); // N_t side
        const CMat b = random_hermitian(3, rng); // N_r side
        CHECK(dual(a, ops.eta_tilde(l, a), b, ops.eta(l, b)) < 1e-10);
    }
    {
        const CMat a = random_hermitian(4, rng);
        const CMat b = random_hermitian(5, rng);
        CHECK(dual(a, ops.tau_tilde(a), b, ops.tau(b)) < 1e-10);
    }
    {
        const CMat a = random_hermitian(2, rng); // N_s side
        const CMat b = random_hermitian(3, rng); // M side
        CHECK(dual(a, ops.zeta_tilde(a), b, ops.zeta(b)) < 1e-10);
    }
}

TEST_CASE("Monte Carlo consistency of every operator") {
    const SystemDims dims{3, 2, 4, 2, 2, 3};
    const ScenarioStats s = random_scenario(dims, 51);
    const CorrelationOps ops(s);
    std::mt19937_64 rng(52);
    const CMat w = random_complex(3, 2, rng);

    for (int l = 0; l < 2; ++l) {
        CAPTURE(l);
        ScatterSampler g(s.sensing[l], 100 + l);
        const CMat c_r = random_psd(2, rng);
        const CMat c_t = random_psd(3, rng);
        const CMat c_m = random_psd(2, rng);
        check_mc([&] { const CMat x = g.draw(); return CMat(x.adjoint() * c_r * x); },
                 ops.eta(l, c_r), random_hermitian(3, rng));
        check_mc([&] { const CMat x = g.draw(); return CMat(x * c_t * x.adjoint()); },
                 ops.eta_tilde(l, c_t), random_hermitian(2, rng));
        check_mc([&] { const CMat x = g.draw() * w; return CMat(x.adjoint() * c_r * x); },
                 ops.eta_w(l, c_r, w), random_hermitian(2, rng));
        check_mc([&] { const CMat x = g.draw() * w; return CMat(x * c_m * x.adjoint()); },
                 ops.eta_tilde_w(l, c_m, w), random_hermitian(2, rng));
    }

    ScatterSampler h(s.comm, 200);
    const CMat e_u = random_psd(4, rng);
    const CMat e_t = random_psd(3, rng);
    const CMat e_m = random_psd(2, rng);
    check_mc([&] { const CMat x = h.draw(); return CMat(x.adjoint() * e_u * x); }, ops.tau(e_u),
             random_hermitian(3, rng));
    check_mc([&] { const CMat x = h.draw(); return CMat(x * e_t * x.adjoint()); },
             ops.tau_tilde(e_t), random_hermitian(4, rng));
    check_mc([&] { const CMat x = h.draw() * w; return CMat(x.adjoint() * e_u * x); },
             ops.tau_w(e_u, w), random_hermitian(2, rng));
    check_mc([&] { const CMat x = h.draw() * w; return CMat(x * e_m * x.adjoint()); },
             ops.tau_tilde_w(e_m, w), random_hermitian(4, rng));

    std::mt19937_64 srng(300);
    const CMat d_m = random_psd(2, rng);
    const CMat d_s = random_psd(3, rng);
    check_mc([&] { const CMat x = sample_symbols_ref(2, 3, srng); return CMat(x.adjoint() * d_m * x); },
             ops.zeta(d_m), random_hermitian(3, rng));
    check_mc([&] { const CMat x = sample_symbols_ref(2, 3, srng); return CMat(x * d_s * x.adjoint()); },
             ops.zeta_tilde(d_s), random_hermitian(2, rng));
}
