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


// Sparse tableau row-elimination kernels. The serial version is the
// reference; the OpenMP version must produce identical tableaux.

#ifndef QPSSE_SIMPLEX_KERNELS_HPP_
#define QPSSE_SIMPLEX_KERNELS_HPP_

#include <utility>
#include <vector>

#include "qpsse/numeric.hpp"

namespace qpsse {

// Nonzeros of one constraint row, sorted by column.
using SparseRow = std::vector<std::pair<int, Rational>>;

struct SparseTableau {
  std::vector<SparseRow> rows;
  RationalVector rhs;
};

// Entry of a sorted sparse row, or nullptr when zero.
const Rational* FindEntry(const SparseRow& row, int col);

// Divides the pivot row (and its rhs) by the pivot entry.
void NormalizePivotRow(SparseTableau& t, int pivot_row, int pivot_col);

// For every row i != pivot_row with a nonzero in pivot_col, subtracts that
// entry times the normalized pivot row (rhs included).
void EliminateSerial(SparseTableau& t, int pivot_row, int pivot_col);
void EliminateParallel(SparseTableau& t, int pivot_row, int pivot_col);

int KernelThreads();

}  // namespace qpsse

#endif  // QPSSE_SIMPLEX_KERNELS_HPP_
