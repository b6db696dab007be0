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

#include <cstddef>
#include <functional>

namespace isac {

/// Worker count: hardware concurrency, capped by the ISAC_MI_THREADS
/// environment variable when it holds a positive integer. At least 1.
int default_worker_count();

/// Calls body(i) for i in [0, n) on up to `workers` threads (0 selects
/// default_worker_count()). Indices are claimed dynamically, so callers must
/// write results by index. If any call throws, the exception of the smallest
/// failing index is rethrown after all workers have stopped.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int workers = 0);

} // namespace isac
