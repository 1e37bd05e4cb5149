// Copyright 2026 The qpsse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Double-precision simplex used only to guess a starting basis for the
// exact solver. Nothing it returns is trusted without exact recomputation.

#ifndef QPSSE_FLOAT_SIMPLEX_HPP_
#define QPSSE_FLOAT_SIMPLEX_HPP_

#include <chrono>
#include <optional>
#include <vector>

#include "qpsse/simplex_kernels.hpp"

namespace qpsse {

// Runs both phases on the standard form max cost.x, rows x = rhs (rhs >= 0),
// x >= 0, starting from `basis`. Columns at or after first_artificial never
// enter. Returns the final basis (row -> column), or nothing when the pass
// hits its iteration cap or the deadline.
std::optional<std::vector<int>> FloatSimplexBasis(
    const SparseTableau& t, const std::vector<int>& basis, int first_artificial,
    int num_cols, const RationalVector& cost,
    std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

}  // namespace qpsse

#endif  // QPSSE_FLOAT_SIMPLEX_HPP_
