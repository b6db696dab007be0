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

#include "isac/model.hpp"
#include "isac/errors.hpp"
#include "isac/random.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace isac {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

// Stream tags keep the scenario draws independent of the Monte Carlo streams.
constexpr std::uint64_t kScenarioStream = 0x5CE7A210ULL;

CMat haar_unitary(int n, std::mt19937_64& rng) {
    const CMat z = complex_gaussian(n, n, 1.0, rng);
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the law is Haar.
    for (int j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0)
            q.col(j) *= r(j, j) / mag;
    }
    return q;
}

WeichselbergerStats make_channel(int rows, int cols, double az_rx, double el_rx, double az_tx,
                                 double el_tx, double kappa, std::mt19937_64& rng) {
    WeichselbergerStats s;
    const auto [rr, rc] = upa_shape(rows);
    const auto [tr, tc] = upa_shape(cols);
    const CVec a_rx = upa_steering(rr, rc, az_rx, el_rx);
    const CVec a_tx = upa_steering(tr, tc, az_tx, el_tx);
    s.mean = a_rx * a_tx.adjoint() / std::sqrt(static_cast<double>(cols));
    s.left_unitary = haar_unitary(rows, rng);
    s.right_unitary = haar_unitary(cols, rng);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    s.variance_profile.resize(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            s.variance_profile(i, j) = unif(rng);

    if (std::isinf(kappa)) {
        s.variance_profile.setZero();
    } else {
        const double target = s.mean.squaredNorm() / kappa;
        const double current = s.scattered_power();
        s.variance_profile *= std::sqrt(target / current);
    }
    return s;
}

double max_unitary_defect(const CMat& u) {
    return (u.adjoint() * u - CMat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

} // namespace

void validate(const SystemDims& d) {
    auto require = [](bool ok, const char* msg) {
        if (!ok)
            throw DimensionError(msg);
    };
    require(d.n_t >= 1, "N_t must be at least 1");
    require(d.n_r >= 1, "N_r must be at least 1");
    require(d.n_u >= 1, "N_u must be at least 1");
    require(d.num_scatter >= 1, "L (scatterer count) must be at least 1");
    require(d.m >= 1, "M must be at least 1");
    require(d.n_s >= 1, "N_s must be at least 1");
    require(d.m <= d.n_t, "M exceeds N_t");
}

double WeichselbergerStats::scattered_power() const {
    if (cols() == 0)
        return 0.0;
    return variance_profile.squaredNorm() / static_cast<double>(cols());
}

void WeichselbergerStats::validate() const {
    if (left_unitary.rows() != rows() || left_unitary.cols() != rows())
        throw DimensionError("left unitary must be rows x rows of the mean");
    if (right_unitary.rows() != cols() || right_unitary.cols() != cols())
        throw DimensionError("right unitary must be cols x cols of the mean");
    if (variance_profile.rows() != rows() || variance_profile.cols() != cols())
        throw DimensionError("variance profile must match the shape of the mean");
    if (max_unitary_defect(left_unitary) > kUnitaryTolerance)
        throw ParameterError("left basis is not unitary");
    if (max_unitary_defect(right_unitary) > kUnitaryTolerance)
        throw ParameterError("right basis is not unitary");
    if (variance_profile.size() > 0 && variance_profile.minCoeff() < 0.0)
        throw ParameterError("variance profile has a negative entry");
}

void ScenarioStats::validate() const {
    isac::validate(dims);
    if (static_cast<int>(sensing.size()) != dims.num_scatter)
        throw DimensionError("sensing channel count differs from L");
    comm.validate();
    if (comm.rows() != dims.n_u || comm.cols() != dims.n_t)
        throw DimensionError("communication channel must be N_u x N_t");
    for (const auto& g : sensing) {
        g.validate();
        if (g.rows() != dims.n_r || g.cols() != dims.n_t)
            throw DimensionError("sensing channel must be N_r x N_t");
    }
    if (!(rician_kappa >= 0.0))
        throw ParameterError("Rician factor must be nonnegative");
}

double NoiseConfig::sigma_c2() const { return std::pow(10.0, -snr_bs_db / 10.0); }

double NoiseConfig::sigma_s2() const {
    return std::pow(10.0, -(snr_bs_db - sensing_offset_db) / 10.0);
}

CVec upa_steering(int rows, int cols, double azimuth, double elevation) {
    if (rows < 1 || cols < 1)
        throw DimensionError("UPA needs at least one element");
    CVec a(static_cast<Eigen::Index>(rows) * cols);
    const double u = std::sin(azimuth) * std::cos(elevation);
    const double v = std::sin(elevation);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a(r * cols + c) = std::polar(1.0, std::numbers::pi * (r * u + c * v));
    return a;
}

std::pair<int, int> upa_shape(int n) {
    if (n < 1)
        throw DimensionError("UPA needs at least one element");
    int rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (rows > 1 && n % rows != 0)
        --rows;
    return {rows, n / rows};
}

ScenarioStats generate_scenario(const SystemDims& dims, double rician_kappa, std::uint64_t seed,
                                const Geometry& geometry) {
    validate(dims);
    if (!(rician_kappa >= 0.0))
        throw ParameterError("Rician factor must be nonnegative");
    if (rician_kappa == 0.0)
        throw ParameterError("Rician factor 0 leaves no LoS power to split");

    auto rng = make_stream(seed, kScenarioStream);
    ScenarioStats s;
    s.dims = dims;
    s.rician_kappa = rician_kappa;
    s.seed = seed;
    s.geometry = geometry;

    const Geometry& g = geometry;
    s.comm = make_channel(dims.n_u, dims.n_t, g.comm_arrival_azimuth, g.comm_arrival_elevation,
                          g.comm_departure_azimuth, g.comm_departure_elevation, rician_kappa, rng);

    std::uniform_real_distribution<double> jitter(-g.angular_spread, g.angular_spread);
    s.sensing.reserve(dims.num_scatter);
    for (int l = 0; l < dims.num_scatter; ++l) {
        const double az = g.target_azimuth + jitter(rng);
        const double el = g.target_elevation + jitter(rng);
        // Monostatic round trip: the echo leaves and returns along the same direction.
        s.sensing.push_back(make_channel(dims.n_r, dims.n_t, az, el, az, el, rician_kappa, rng));
    }
    return s;
}

Beamformer default_beamformer(const SystemDims& dims, double p_t) {
    validate(dims);
    if (!(p_t > 0.0))
        throw ParameterError("power budget must be positive");
    Beamformer bf;
    bf.p_t = p_t;
    bf.w = CMat::Zero(dims.n_t, dims.m);
    bf.w.topRows(dims.m) = CMat::Identity(dims.m, dims.m) * std::sqrt(p_t / dims.m);
    return bf;
}

CMat stacked_sensing_mean(const ScenarioStats& stats) {
    const int nr = stats.dims.n_r;
    CMat g(stats.dims.sensing_rows(), stats.dims.n_t);
    for (int l = 0; l < stats.dims.num_scatter; ++l)
        g.middleRows(l * nr, nr) = stats.sensing[l].mean;
    return g;
}

EffectiveLos effective_los(const ScenarioStats& stats, const CMat& w) {
    if (w.rows() != stats.dims.n_t)
        throw DimensionError("beamformer must have N_t rows");
    if (static_cast<int>(stats.sensing.size()) != stats.dims.num_scatter)
        throw DimensionError("sensing channel count differs from L");
    EffectiveLos out;
    out.g_raw = stacked_sensing_mean(stats);
    out.g_eff = out.g_raw * w;
    out.h_eff = stats.comm.mean * w;
    return out;
}

ScenarioStats pure_los(ScenarioStats stats) {
    stats.comm.variance_profile.setZero();
    for (auto& g : stats.sensing)
        g.variance_profile.setZero();
    stats.rician_kappa = kPureLosKappa;
    return stats;
}

ScenarioStats without_los(ScenarioStats stats) {
    stats.comm.mean.setZero();
    for (auto& g : stats.sensing)
        g.mean.setZero();
    return stats;
}

} // namespace isac
