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

#include "isac/montecarlo.hpp"
#include "isac/errors.hpp"
#include "isac/parallel.hpp"
#include "isac/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace isac {

namespace {

constexpr std::uint64_t kChannelTag = 0xC4A7'7E15;
constexpr std::uint64_t kSymbolTag = 0x5E1B'0175;

CMat draw(const WeichselbergerStats& s, std::mt19937_64& rng) {
    const CMat z = complex_gaussian(s.rows(), s.cols(), 1.0 / static_cast<double>(s.cols()), rng);
    const CMat scaled = s.variance_profile.cast<cplx>().cwiseProduct(z);
    return s.mean + s.left_unitary * scaled * s.right_unitary.adjoint();
}

CMat stacked_effective(const std::vector<CMat>& g, const CMat& w) {
    if (g.empty())
        throw DimensionError("at least one sensing channel is required");
    const Eigen::Index nr = g.front().rows();
    CMat out(nr * static_cast<Eigen::Index>(g.size()), w.cols());
    for (std::size_t l = 0; l < g.size(); ++l) {
        if (g[l].rows() != nr || g[l].cols() != w.rows())
            throw DimensionError("sensing channel shapes disagree");
        out.middleRows(static_cast<Eigen::Index>(l) * nr, nr) = g[l] * w;
    }
    return out;
}

// Returns the finite value or throws.
double checked(double v, const char* what) {
    if (!std::isfinite(v))
        throw NumericalError(std::string("non-finite ") + what);
    return v;
}

// F F^H with the factor F; Hermitian by construction.
CMat gram(const CMat& f) {
    CMat b = f * f.adjoint();
    return 0.5 * (b + b.adjoint());
}

double resolvent_trace(const CMat& b, double w) {
    const Eigen::Index n = b.rows();
    // (wI - B)^{-1} = -(B - wI)^{-1}, and B - wI is positive definite for w < 0.
    const CMat inv = hermitian_inverse(b - w * CMat::Identity(n, n), "resolvent");
    return -inv.trace().real() / static_cast<double>(n);
}

} // namespace

ChannelDraw sample_channels(const ScenarioStats& stats, std::uint64_t trial) {
    auto rng = make_stream(stats.seed, kChannelTag, trial);
    ChannelDraw d;
    d.h_c = draw(stats.comm, rng);
    d.g.reserve(stats.sensing.size());
    for (const auto& s : stats.sensing)
        d.g.push_back(draw(s, rng));
    return d;
}

CMat sample_symbols(const SystemDims& dims, std::uint64_t seed, std::uint64_t trial) {
    auto rng = make_stream(seed, kSymbolTag, trial);
    return complex_gaussian(dims.m, dims.n_s, 1.0 / dims.n_s, rng);
}

double finite_mi_sensing(const std::vector<CMat>& g, const CMat& s, const CMat& w,
                         double sigma_s2) {
    if (!(sigma_s2 > 0.0))
        throw ParameterError("noise power must be positive");
    if (s.rows() != w.cols())
        throw DimensionError("symbol block must have M rows");
    const CMat f = stacked_effective(g, w) * s;
    return checked(logdet_identity_plus_psd(gram(f) / sigma_s2), "sensing log-determinant");
}

double finite_mi_comm(const CMat& h, const CMat& w, double sigma_c2) {
    if (!(sigma_c2 > 0.0))
        throw ParameterError("noise power must be positive");
    if (h.cols() != w.rows())
        throw DimensionError("channel and beamformer shapes disagree");
    return checked(logdet_identity_plus_psd(gram(h * w) / sigma_c2), "communication log-determinant");
}

McEstimate estimate(const ScenarioStats& stats, const Beamformer& bf, const NoiseConfig& noise,
                    McQuantity quantity, const McOptions& opts) {
    if (opts.trials < 2)
        throw ParameterError("Monte Carlo needs at least two trials");
    if (bf.w.rows() != stats.dims.n_t || bf.w.cols() != stats.dims.m)
        throw DimensionError("beamformer must be N_t x M");
    const double s2s = noise.sigma_s2();
    const double s2c = noise.sigma_c2();

    std::vector<double> values(static_cast<std::size_t>(opts.trials));
    parallel_for(
        values.size(),
        [&](std::size_t t) {
            const ChannelDraw d = sample_channels(stats, t);
            double v = 0.0;
            switch (quantity) {
            case McQuantity::mi_s:
                v = finite_mi_sensing(d.g, sample_symbols(stats.dims, stats.seed, t), bf.w, s2s);
                break;
            case McQuantity::mi_c:
                v = finite_mi_comm(d.h_c, bf.w, s2c);
                break;
            case McQuantity::resolvent_s: {
                const CMat f = stacked_effective(d.g, bf.w) * sample_symbols(stats.dims, stats.seed, t);
                v = resolvent_trace(gram(f), -s2s);
                break;
            }
            case McQuantity::resolvent_c:
                v = resolvent_trace(gram(d.h_c * bf.w), -s2c);
                break;
            }
            values[t] = v;
        },
        opts.workers);

    if (opts.dump) {
        *opts.dump << "trial,value\n";
        char buf[40];
        for (std::size_t t = 0; t < values.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%.12g", values[t]);
            *opts.dump << t << ',' << buf << '\n';
        }
    }

    // Sequential two-pass reduction in trial order.
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return McEstimate{mean, std::sqrt(ss / (n - 1.0) / n), opts.trials};
}

EigenEcdf::EigenEcdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    std::sort(sorted_.begin(), sorted_.end());
}

double EigenEcdf::operator()(double x) const {
    if (sorted_.empty())
        return 0.0;
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EigenEcdf eigen_ecdf(const ScenarioStats& stats, const Beamformer& bf, GramBranch branch,
                     int trials, int workers) {
    if (trials < 1)
        throw ParameterError("ECDF needs at least one trial");
    const Eigen::Index n =
        branch == GramBranch::sensing ? stats.dims.sensing_rows() : stats.dims.n_u;
    std::vector<double> pooled(static_cast<std::size_t>(trials * n));
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) {
            const ChannelDraw d = sample_channels(stats, t);
            const CMat b = branch == GramBranch::sensing
                               ? gram(stacked_effective(d.g, bf.w) *
                                      sample_symbols(stats.dims, stats.seed, t))
                               : gram(d.h_c * bf.w);
            Eigen::SelfAdjointEigenSolver<CMat> es(b, Eigen::EigenvaluesOnly);
            for (Eigen::Index i = 0; i < n; ++i)
                // B is PSD; clamp rounding noise below zero.
                pooled[static_cast<std::size_t>(t * n + i)] = std::max(0.0, es.eigenvalues()(i));
        },
        workers);
    return EigenEcdf(std::move(pooled));
}

} // namespace isac
