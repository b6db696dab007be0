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

#include "isac/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace isac {

/// Independent generator for the (seed, tag, index) triple.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// rows x cols matrix of i.i.d. CN(0, variance) entries, filled column-major.
inline CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, double variance,
                             std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    CMat z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = cplx(re, im);
        }
    return z;
}

} // namespace isac
