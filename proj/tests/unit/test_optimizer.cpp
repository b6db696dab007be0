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

#include "isac/errors.hpp"
#include "isac/optimizer.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace isac;
using namespace isac::testing;

namespace {

struct Setup {
    ScenarioStats stats;
    NoiseConfig noise{5.0, 20.0};
    SolverOptions solver;
};

Setup small_setup(std::uint64_t seed) {
    Setup s{random_scenario(SystemDims{4, 3, 3, 2, 2, 3}, seed), NoiseConfig{5.0, 20.0}, {}};
    s.solver.tol = 1e-13;
    s.solver.max_iter = 100000;
    return s;
}

double objective(const Setup& s, const CMat& w, double rho) {
    return weighted_mi(s.stats, Beamformer{w, 1e9}, s.noise, rho, s.solver).weighted;
}

CMat gradient_at(const Setup& s, const CMat& w, double rho) {
    const Beamformer bf{w, 1e9};
    const MiEvaluation ev = evaluate_mi(s.stats, bf, s.noise, rho, s.solver);
    return gradient(s.stats, bf, s.noise, rho, ev.sensing, ev.comm);
}

} // namespace

TEST_CASE("projection onto the power ball") {
    const CMat inside = CMat::Constant(2, 2, cplx(0.5, 0.0));
    CHECK(project(inside, 1.0) == inside);
    const CMat outside = CMat::Constant(2, 2, cplx(1.0, 1.0));
    const CMat p = project(outside, 2.0);
    CHECK(p.squaredNorm() <= 2.0);
    CHECK(p.squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((p - outside * std::sqrt(2.0 / 8.0)).norm() < 1e-14);
    CHECK(project(CMat::Zero(2, 2), 1.0).isZero(0.0));
    CHECK_THROWS_AS(project(inside, 0.0), ParameterError);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const CMat w = random_complex(5, 3, rng) * 3.0;
        CHECK(project(w, 0.7).squaredNorm() <= 0.7);
    }
}

TEST_CASE("gradient matches finite differences") {
    for (std::uint64_t seed : {1u, 2u}) {
        const Setup s = small_setup(seed);
        std::mt19937_64 rng(seed);
        const CMat w = random_complex(4, 2, rng);
        for (double rho : {0.0, 0.5, 0.8, 1.0}) {
            CAPTURE(rho);
            const CMat g = gradient_at(s, w, rho);
            const CMat fd = fd_gradient([&](const CMat& x) { return objective(s, x, rho); }, w, 1e-5);
            CHECK((g - fd).norm() / fd.norm() < 1e-4);
        }
    }
}

TEST_CASE("gradient is an ascent direction") {
    const Setup s = small_setup(3);
    std::mt19937_64 rng(3);
    const CMat w = random_complex(4, 2, rng);
    const CMat g = gradient_at(s, w, 0.5);
    const double f0 = objective(s, w, 0.5);
    const double lambda = 1e-6;
    const double f1 = objective(s, w + lambda * g, 0.5);
    CHECK(f1 > f0);
    CHECK((f1 - f0) / (lambda * g.squaredNorm()) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("gradient at zero precoder vanishes") {
    const Setup s = small_setup(4);
    CHECK(gradient_at(s, CMat::Zero(4, 2), 0.5).norm() < 1e-14);
}

TEST_CASE("gradient input checks") {
    const Setup s = small_setup(5);
    const Beamformer bf = default_beamformer(s.stats.dims, 4.0);
    const MiEvaluation ev = evaluate_mi(s.stats, bf, s.noise, 0.5, s.solver);
    CHECK_THROWS_AS(gradient(s.stats, bf, s.noise, 1.2, ev.sensing, ev.comm), ParameterError);
    CHECK_THROWS_AS(gradient(s.stats, bf, NoiseConfig{0.0, 20.0}, 0.5, ev.sensing, ev.comm),
                    ParameterError);
    const Beamformer other{2.0 * bf.w, 4.0};
    CHECK_THROWS_AS(gradient(s.stats, other, s.noise, 0.5, ev.sensing, ev.comm), NumericalError);
}

TEST_CASE("projected gradient ascent") {
    const Setup s = small_setup(6);
    PgaOptions o;
    o.solver = SolverOptions{};
    o.max_outer_iters = 30;
    o.epsilon = 1e-8;
    const PgaResult r = pga(s.stats, s.noise, 0.5, 4.0, o);
    REQUIRE(r.trace.rows.size() >= 2);
    CHECK(r.trace.rows.front().iter == 0);
    CHECK(r.trace.rows.front().step == 0.0);
    for (std::size_t i = 0; i < r.trace.rows.size(); ++i) {
        CHECK(r.trace.rows[i].feasible);
        if (i > 0)
            CHECK(r.trace.rows[i].weighted >= r.trace.rows[i - 1].weighted);
    }
    CHECK(r.beamformer.feasible(0.0));
    CHECK(r.report.weighted == r.trace.rows.back().weighted);
    // With a budget constraint and no loss in power, the optimum sits on the sphere.
    CHECK(r.beamformer.power() == doctest::Approx(4.0).epsilon(1e-6));

    const std::string csv = r.trace.to_csv();
    CHECK(csv.rfind("iter,weighted_bits,step,grad_norm\n", 0) == 0);

    SUBCASE("reproducible") {
        const PgaResult again = pga(s.stats, s.noise, 0.5, 4.0, o);
        CHECK(again.beamformer.w == r.beamformer.w);
        CHECK(again.trace.to_csv() == csv);
    }
    SUBCASE("iteration budget") {
        PgaOptions one = o;
        one.max_outer_iters = 1;
        const PgaResult r1 = pga(s.stats, s.noise, 0.5, 4.0, one);
        CHECK(r1.trace.rows.size() == 2);
        CHECK(r1.stop == PgaStop::max_iterations);
        one.max_outer_iters = 0;
        CHECK(pga(s.stats, s.noise, 0.5, 4.0, one).trace.rows.size() == 1);
    }
    SUBCASE("fixed step") {
        PgaOptions f = o;
        f.step_rule = StepRule::fixed;
        f.fixed_step = 0.05;
        f.max_outer_iters = 5;
        const PgaResult rf = pga(s.stats, s.noise, 0.5, 4.0, f);
        for (const auto& row : rf.trace.rows) {
            CHECK(row.feasible);
            if (row.iter > 0)
                CHECK(row.step == 0.05);
        }
    }
    SUBCASE("initial point") {
        PgaOptions i = o;
        i.initial = CMat::Constant(4, 2, cplx(5.0, 0.0));
        i.max_outer_iters = 0;
        const PgaResult ri = pga(s.stats, s.noise, 0.5, 4.0, i);
        CHECK(ri.beamformer.power() <= 4.0);
        i.initial = CMat::Zero(3, 2);
        CHECK_THROWS_AS(pga(s.stats, s.noise, 0.5, 4.0, i), DimensionError);
    }
}

TEST_CASE("ascent stops at a stationary point without any channel") {
    const ScenarioStats zero = without_los(pure_los(random_scenario(SystemDims{4, 3, 3, 2, 2, 3}, 7)));
    const PgaResult r = pga(zero, NoiseConfig{}, 0.5, 1.0);
    CHECK(r.stop == PgaStop::stationary);
    CHECK(r.trace.rows.size() == 1);
}

TEST_CASE("option checks and aborts") {
    const Setup s = small_setup(8);
    PgaOptions bad;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(pga(s.stats, s.noise, 0.5, 1.0, bad), ParameterError);
    bad = PgaOptions{};
    bad.shrink = 1.0;
    CHECK_THROWS_AS(pga(s.stats, s.noise, 0.5, 1.0, bad), ParameterError);
    CHECK_THROWS_AS(pga(s.stats, s.noise, 1.5, 1.0), ParameterError);
    CHECK_THROWS_AS(pga(s.stats, s.noise, 0.5, -1.0), ParameterError);

    PgaOptions starved;
    starved.solver.max_iter = 1;
    starved.solver.tol = 1e-15;
    try {
        pga(s.stats, s.noise, 0.5, 1.0, starved);
        FAIL("expected PgaAborted");
    } catch (const PgaAborted& e) {
        CHECK(e.trace().rows.empty());
        CHECK(std::string(e.what()).find("did not converge") != std::string::npos);
    }
}

TEST_CASE("optimized precoder beats the default on the reference scenario") {
    const SystemDims dims{8, 8, 8, 2, 8, 8};
    const ScenarioStats s = generate_scenario(dims, 1.0, 7);
    const NoiseConfig noise{10.0, 20.0};
    const double p_t = 8.0;
    const double base = weighted_mi(s, default_beamformer(dims, p_t), noise, 0.8).weighted;
    PgaOptions o;
    o.max_outer_iters = 50;
    const PgaResult r = pga(s, noise, 0.8, p_t, o);
    CHECK(r.report.weighted > base);
    const auto& rows = r.trace.rows;
    const std::size_t k = std::min<std::size_t>(20, rows.size() - 1);
    CHECK(rows.back().weighted - rows[k].weighted < 0.01 * rows.back().weighted);
}
