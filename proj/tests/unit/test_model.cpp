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
#include "isac/model.hpp"
#include "isac/scenario_io.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace isac;
using namespace isac::testing;

namespace {

double max_unitary_defect(const CMat& u) {
    return (u.adjoint() * u - CMat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

bool same(const WeichselbergerStats& a, const WeichselbergerStats& b) {
    return a.mean == b.mean && a.left_unitary == b.left_unitary &&
           a.right_unitary == b.right_unitary && a.variance_profile == b.variance_profile;
}

} // namespace

TEST_CASE("validate(dims)") {
    CHECK_NOTHROW(validate(SystemDims{16, 16, 16, 2, 16, 16}));
    CHECK_NOTHROW(validate(SystemDims{1, 1, 1, 1, 1, 1}));
    try {
        validate(SystemDims{4, 4, 4, 2, 8, 8});
        FAIL("expected DimensionError");
    } catch (const DimensionError& e) {
        CHECK(std::string(e.what()).find("M exceeds N_t") != std::string::npos);
    }
    CHECK_THROWS_AS(validate(SystemDims{4, 0, 4, 2, 4, 4}), DimensionError);
    CHECK_THROWS_AS(validate(SystemDims{4, 4, 4, 0, 4, 4}), DimensionError);
}

TEST_CASE("UPA steering vectors") {
    const CVec one = upa_steering(1, 1, 0.4, -0.2);
    CHECK(one.size() == 1);
    CHECK(std::abs(one(0) - cplx(1.0, 0.0)) < 1e-15);

    const CVec broadside = upa_steering(2, 2, 0.0, 0.0);
    CHECK((broadside - CVec::Ones(4)).norm() < 1e-15);

    const double az = std::numbers::pi / 6, el = std::numbers::pi / 8;
    const CVec a = upa_steering(4, 4, az, el);
    CHECK(a.squaredNorm() == doctest::Approx(16.0).epsilon(1e-14));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const double phase =
                std::numbers::pi * (r * std::sin(az) * std::cos(el) + c * std::sin(el));
            CHECK(std::abs(a(r * 4 + c) - std::polar(1.0, phase)) < 1e-14);
        }
    CHECK(upa_shape(16) == std::pair<int, int>{4, 4});
    CHECK(upa_shape(8) == std::pair<int, int>{2, 4});
    CHECK(upa_shape(7) == std::pair<int, int>{1, 7});
}

TEST_CASE("generate_scenario is deterministic and respects the invariants") {
    const SystemDims dims{4, 4, 4, 2, 4, 4};
    const ScenarioStats a = generate_scenario(dims, 1.0, 11);
    const ScenarioStats b = generate_scenario(dims, 1.0, 11);
    const ScenarioStats c = generate_scenario(dims, 1.0, 12);
    REQUIRE(a.sensing.size() == 2);
    CHECK(same(a.comm, b.comm));
    for (int l = 0; l < 2; ++l)
        CHECK(same(a.sensing[l], b.sensing[l]));
    CHECK_FALSE(same(a.comm, c.comm));
    CHECK_NOTHROW(a.validate());

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ScenarioStats s = generate_scenario(SystemDims{6, 3, 5, 3, 4, 2}, 2.5, seed);
        std::vector<const WeichselbergerStats*> all{&s.comm};
        for (const auto& g : s.sensing)
            all.push_back(&g);
        for (const auto* w : all) {
            CHECK(max_unitary_defect(w->left_unitary) < 1e-10);
            CHECK(max_unitary_defect(w->right_unitary) < 1e-10);
            CHECK(w->variance_profile.minCoeff() >= 0.0);
            // (1/N_t) sum profile^2 = ||mean||^2 / kappa
            const double lhs = w->variance_profile.squaredNorm() / w->cols();
            CHECK(lhs == doctest::Approx(w->mean.squaredNorm() / 2.5).epsilon(1e-10));
        }
    }
}

TEST_CASE("kappa limits") {
    const SystemDims dims{4, 4, 4, 2, 4, 4};
    const ScenarioStats los = generate_scenario(dims, kPureLosKappa, 3);
    CHECK(los.comm.variance_profile.isZero(0.0));
    for (const auto& g : los.sensing)
        CHECK(g.variance_profile.isZero(0.0));
    CHECK_THROWS_AS(generate_scenario(dims, -1.0, 3), ParameterError);
    CHECK_THROWS_AS(generate_scenario(dims, 0.0, 3), ParameterError);
    CHECK_THROWS_AS(generate_scenario(SystemDims{2, 2, 2, 1, 3, 1}, 1.0, 3), DimensionError);
}

TEST_CASE("scattered power equals ||mean||^2 / kappa in expectation (Monte Carlo)") {
    const ScenarioStats s = generate_scenario(SystemDims{4, 4, 4, 2, 4, 4}, 1.0, 5);
    ScatterSampler sampler(s.comm, 99);
    double sum = 0.0, sq = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double v = sampler.draw().squaredNorm();
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
    CHECK(std::abs(mean - s.comm.mean.squaredNorm()) < 3.0 * se);
}

TEST_CASE("default beamformer") {
    const Beamformer b4 = default_beamformer(SystemDims{4, 4, 4, 1, 4, 4}, 4.0);
    CHECK((b4.w - CMat::Identity(4, 4)).norm() < 1e-15);
    const Beamformer b8 = default_beamformer(SystemDims{8, 8, 8, 1, 4, 4}, 8.0);
    CHECK((b8.w.topRows(4) - std::sqrt(2.0) * CMat::Identity(4, 4)).norm() < 1e-15);
    CHECK(b8.w.bottomRows(4).isZero(0.0));
    CHECK(b8.power() == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(b8.feasible());
    CHECK_THROWS_AS(default_beamformer(SystemDims{4, 4, 4, 1, 4, 4}, 0.0), ParameterError);
}

TEST_CASE("effective LoS matrices") {
    const ScenarioStats s = random_scenario(SystemDims{3, 3, 3, 2, 3, 3}, 8);
    std::mt19937_64 rng(9);
    const CMat w = random_complex(3, 3, rng);
    const EffectiveLos e = effective_los(s, w);
    CMat stacked(6, 3);
    stacked << s.sensing[0].mean, s.sensing[1].mean;
    CHECK((e.g_raw - stacked).norm() < 1e-15);
    CHECK((e.g_eff - stacked * w).norm() < 1e-13);
    CHECK((e.h_eff - s.comm.mean * w).norm() < 1e-13);

    const EffectiveLos z = effective_los(s, CMat::Zero(3, 3));
    CHECK(z.g_eff.isZero(0.0));
    CHECK(z.h_eff.isZero(0.0));

    ScenarioStats one = random_scenario(SystemDims{3, 3, 3, 1, 3, 3}, 8);
    one.sensing[0].mean = CMat::Identity(3, 3);
    CHECK((effective_los(one, CMat::Identity(3, 3)).g_eff - CMat::Identity(3, 3)).norm() == 0.0);
    CHECK_THROWS_AS(effective_los(s, CMat::Zero(2, 3)), DimensionError);
}

TEST_CASE("noise configuration") {
    const NoiseConfig n{10.0, 20.0};
    CHECK(n.sigma_c2() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(n.sigma_s2() == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(NoiseConfig{}.sigma_c2() > 0.0);
}

TEST_CASE("scenario JSON round trip") {
    for (double kappa : {1.0, kPureLosKappa}) {
        const ScenarioStats s = generate_scenario(SystemDims{4, 2, 3, 2, 3, 2}, kappa, 21);
        const ScenarioStats t = scenario_from_json(scenario_to_json(s));
        CHECK(t.dims == s.dims);
        CHECK(t.seed == s.seed);
        CHECK(t.geometry == s.geometry);
        CHECK((std::isinf(kappa) ? std::isinf(t.rician_kappa) : t.rician_kappa == kappa));
        CHECK(same(t.comm, s.comm));
        for (int l = 0; l < 2; ++l)
            CHECK(same(t.sensing[l], s.sensing[l]));
        CHECK(scenario_to_json(t) == scenario_to_json(s));
    }
    CHECK_THROWS_AS(scenario_from_json("{"), ScenarioFormatError);
    CHECK_THROWS_AS(scenario_from_json(R"({"format":"other","version":1})"), ScenarioFormatError);
}
