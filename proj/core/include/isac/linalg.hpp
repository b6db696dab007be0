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

#include <Eigen/Dense>

#include <complex>
#include <string_view>

namespace isac {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Inverses with reciprocal condition below this raise SingularMatrixError.
inline constexpr double kMaxConditionNumber = 1e14;

/// Anti-Hermitian part (Frobenius) tolerated by hermitize().
inline constexpr double kHermitianInputTolerance = 1e-8;

/// log|det A| together with the sign of det A for a Hermitian A.
struct SignedLogDet {
    double log_abs = 0.0;
    int sign = 1;
};

/// ||A - A^H||_F / 2: zero for Hermitian input.
double hermitian_defect(const CMat& a);

/// (A + A^H)/2. Throws DimensionError if A is not square or its
/// anti-Hermitian part exceeds kHermitianInputTolerance.
CMat hermitize(const CMat& a, std::string_view what = "input");

/// Inverse of a Hermitian definite matrix through an LDL^H factorization.
/// `what` names the equation in the SingularMatrixError message.
CMat hermitian_inverse(const CMat& a, std::string_view what);

/// Sign-aware log-determinant of a Hermitian matrix via LDL^H.
SignedLogDet hermitian_logdet(const CMat& a, std::string_view what);

/// logdet(I + A) for Hermitian positive semidefinite A, via Cholesky.
double logdet_identity_plus_psd(const CMat& a);

/// Smallest eigenvalue of the Hermitian part of A.
double min_eigenvalue(const CMat& a);

/// Largest eigenvalue of the Hermitian part of A.
double max_eigenvalue(const CMat& a);

/// Relative change ||lhs - rhs||_F / (1 + ||rhs||_F).
inline double relative_change(const CMat& lhs, const CMat& rhs) {
    return (lhs - rhs).norm() / (1.0 + rhs.norm());
}

} // namespace isac
