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


#include "qpsse/simplex_kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpsse {
namespace {

constexpr int kNoCol = std::numeric_limits<int>::max();

// row <- row - factor * prow, as a sorted merge.
void EliminateRow(SparseRow& row, Rational& rhs, const SparseRow& prow,
                  const Rational& prhs, const Rational& factor) {
  SparseRow out;
  out.reserve(row.size() + prow.size());
  mpq_class tmp;
  size_t i = 0, k = 0;
  while (i < row.size() || k < prow.size()) {
    const int ci = i < row.size() ? row[i].first : kNoCol;
    const int ck = k < prow.size() ? prow[k].first : kNoCol;
    if (ci < ck) {
      out.push_back(std::move(row[i++]));
    } else if (ck < ci) {
      mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), prow[k].second.get_mpq_t());
      mpq_neg(tmp.get_mpq_t(), tmp.get_mpq_t());
      out.emplace_back(ck, tmp);
      ++k;
    } else {
      mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), prow[k].second.get_mpq_t());
      mpq_sub(row[i].second.get_mpq_t(), row[i].second.get_mpq_t(), tmp.get_mpq_t());
      if (sgn(row[i].second) != 0) out.push_back(std::move(row[i]));
      ++i;
      ++k;
    }
  }
  row = std::move(out);
  mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), prhs.get_mpq_t());
  mpq_sub(rhs.get_mpq_t(), rhs.get_mpq_t(), tmp.get_mpq_t());
}

std::vector<std::pair<int, Rational>> RowsToUpdate(const SparseTableau& t,
                                                   int pivot_row, int pivot_col) {
  std::vector<std::pair<int, Rational>> rows;
  for (int i = 0; i < static_cast<int>(t.rows.size()); ++i) {
    if (i == pivot_row) continue;
    if (const Rational* v = FindEntry(t.rows[i], pivot_col)) rows.emplace_back(i, *v);
  }
  return rows;
}

}  // namespace

const Rational* FindEntry(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

void NormalizePivotRow(SparseTableau& t, int pivot_row, int pivot_col) {
  SparseRow& prow = t.rows[pivot_row];
  const Rational inv = 1 / *FindEntry(prow, pivot_col);
  for (auto& [c, v] : prow) v *= inv;
  t.rhs[pivot_row] *= inv;
}

void EliminateSerial(SparseTableau& t, int pivot_row, int pivot_col) {
  for (const auto& [i, factor] : RowsToUpdate(t, pivot_row, pivot_col)) {
    EliminateRow(t.rows[i], t.rhs[i], t.rows[pivot_row], t.rhs[pivot_row], factor);
  }
}

void EliminateParallel(SparseTableau& t, int pivot_row, int pivot_col) {
  const auto rows = RowsToUpdate(t, pivot_row, pivot_col);
  const int n = static_cast<int>(rows.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
  for (int k = 0; k < n; ++k) {
    const int i = rows[k].first;
    EliminateRow(t.rows[i], t.rhs[i], t.rows[pivot_row], t.rhs[pivot_row],
                 rows[k].second);
  }
}

int KernelThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qpsse
