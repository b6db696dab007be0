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

// Reference computations for the tests. Nothing here calls the solvers under
// test; each oracle is built from first principles (bisection, quadrature,
// direct sampling, dense eigendecomposition, finite differences).

#include "isac/model.hpp"

#include <cstdint>
#include <functional>
#include <random>

namespace isac::testing {

// ---------------------------------------------------------------- scalar case

/// L = N_r = N_t = M = N_s = 1 sensing channel g = gbar + n z, z ~ CN(0,1),
/// seen through the scalar beamformer wb.
struct ScalarCase {
    cplx gbar{0.8, 0.3};
    double n = 0.6;
    cplx wb{0.9, -0.2};

    double a() const { return std::norm(wb) * n * n; }        // scattered gain
    double b() const { return std::norm(gbar * wb); }         // LoS gain
    ScenarioStats scenario() const;
    Beamformer beamformer() const { return Beamformer{CMat::Constant(1, 1, wb), 1.0}; }
};

struct ScalarSolution {
    double g_c_tilde = 0.0;  ///< Cauchy transform at -sigma^2 (negative)
    double g_c = 0.0;
    double g_d_tilde = 0.0;
};

/// Nested bisection on the reduced two-unknown system.
ScalarSolution scalar_bisection(const ScalarCase& sc, double sigma2);

/// V(sigma^2) = int_{sigma^2}^inf (1/s + G(-s)) ds by double-exponential
/// quadrature over the bisection Cauchy transform.
double scalar_shannon_quadrature(const ScalarCase& sc, double sigma2);

// ------------------------------------------------------------------- sampling

/// Independent sampler of the random part left (profile .* Z) right^H.
class ScatterSampler {
  public:
    ScatterSampler(const WeichselbergerStats& s, std::uint64_t seed);
    CMat draw();

  private:
    const WeichselbergerStats* s_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Entrywise sample mean and standard error of a matrix-valued statistic.
struct MatrixMoments {
    CMat mean;
    RMat se_re;
    RMat se_im;

    /// Largest |mean - ref| / se over real and imaginary parts. Differences
    /// below 1e-12 are ignored; any other difference with zero spread counts
    /// as infinite.
    double max_z(const CMat& ref) const;
};

MatrixMoments sample_moments(const std::function<CMat()>& draw, int samples);

/// Mean and standard error of the scalar Re Tr(probe * X) over draws of X.
struct ScalarMoments {
    double mean = 0.0;
    double se = 0.0;
};
ScalarMoments probe_moments(const std::function<CMat()>& draw, const CMat& probe, int samples);

// ------------------------------------------------------------------ utilities

CMat random_hermitian(Eigen::Index n, std::mt19937_64& rng);
CMat random_psd(Eigen::Index n, std::mt19937_64& rng);
CMat random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Random scenario whose entries do not come from generate_scenario: dense
/// random means, QR-orthonormalized unitaries, uniform profiles.
ScenarioStats random_scenario(const SystemDims& dims, std::uint64_t seed, double scatter = 0.5);

/// logdet(I + A) from the eigenvalues of the Hermitian PSD matrix A.
double logdet_identity_plus_eig(const CMat& a);

/// Central differences of a real function of a complex matrix, returned as
/// dF/dRe + i dF/dIm so that dF = Re Tr(G^H dW).
CMat fd_gradient(const std::function<double(const CMat&)>& f, const CMat& w, double h);

} // namespace isac::testing
