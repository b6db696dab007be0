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

#include "isac/linalg.hpp"
#include "isac/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace isac {

namespace {

Eigen::LDLT<CMat> factorize(const CMat& a, std::string_view what) {
    if (a.rows() != a.cols())
        throw DimensionError(std::string(what) + ": matrix is not square");
    Eigen::LDLT<CMat> ldlt(a);
    if (ldlt.info() != Eigen::Success)
        throw SingularMatrixError(std::string(what), std::numeric_limits<double>::infinity());
    // LDLT solves through zero pivots, so rcond() alone misses exact singularity.
    const RVec piv = ldlt.vectorD().real().cwiseAbs();
    if (!(piv.minCoeff() * kMaxConditionNumber >= piv.maxCoeff()))
        throw SingularMatrixError(std::string(what), std::numeric_limits<double>::infinity());
    const double rc = ldlt.rcond();
    if (!(rc * kMaxConditionNumber >= 1.0))
        throw SingularMatrixError(std::string(what),
                                  rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity());
    return ldlt;
}

} // namespace

double hermitian_defect(const CMat& a) {
    if (a.rows() != a.cols())
        return std::numeric_limits<double>::infinity();
    return 0.5 * (a - a.adjoint()).norm();
}

CMat hermitize(const CMat& a, std::string_view what) {
    if (a.rows() != a.cols())
        throw DimensionError(std::string(what) + ": matrix is not square");
    if (hermitian_defect(a) > kHermitianInputTolerance)
        throw DimensionError(std::string(what) + ": matrix is not Hermitian");
    return 0.5 * (a + a.adjoint());
}

CMat hermitian_inverse(const CMat& a, std::string_view what) {
    if (a.size() == 0)
        return a;
    const auto ldlt = factorize(a, what);
    CMat inv = ldlt.solve(CMat::Identity(a.rows(), a.cols()));
    return 0.5 * (inv + inv.adjoint());
}

SignedLogDet hermitian_logdet(const CMat& a, std::string_view what) {
    SignedLogDet out;
    if (a.size() == 0)
        return out;
    const auto ldlt = factorize(a, what);
    const auto d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double di = d(i).real();
        out.log_abs += std::log(std::abs(di));
        if (di < 0.0)
            out.sign = -out.sign;
    }
    return out;
}

double logdet_identity_plus_psd(const CMat& a) {
    const CMat m = CMat::Identity(a.rows(), a.cols()) + 0.5 * (a + a.adjoint());
    Eigen::LLT<CMat> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericalError("logdet(I + A): matrix is not positive definite");
    const CMat& l = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        acc += std::log(l(i, i).real());
    const double out = 2.0 * acc;
    if (!std::isfinite(out))
        throw NumericalError("logdet(I + A): non-finite result");
    return out;
}

double min_eigenvalue(const CMat& a) {
    if (a.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const CMat& a) {
    if (a.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

} // namespace isac
