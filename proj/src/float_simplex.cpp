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


#include "qpsse/float_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace qpsse {
namespace {

using FRow = std::vector<std::pair<int, double>>;

constexpr double kPivotTol = 1e-7;
constexpr double kFeasTol = 1e-9;
constexpr double kShift = 1e-6;
constexpr double kCostTol = 1e-9;
constexpr double kDropTol = 1e-12;

const double* Find(const FRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

class FloatSimplex {
 public:
  FloatSimplex(const SparseTableau& t, std::vector<int> basis, int first_artificial,
               int num_cols)
      : basis_(std::move(basis)), first_art_(first_artificial), num_cols_(num_cols) {
    rows_.resize(t.rows.size());
    rhs_.resize(t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
      for (const auto& [c, v] : t.rows[i]) rows_[i].emplace_back(c, v.get_d());
      // Distinct small shifts break the massive degeneracy of the equilibrium
      // LPs; the exact pass repairs any basis this makes slightly wrong.
      rhs_[i] = t.rhs[i].get_d() + kShift * (1.0 + static_cast<double>((i * 7919) % 1009) / 1009);
    }
  }

  // 1: optimal or unbounded, 0: gave up.
  bool Optimize(const std::vector<double>& cost,
                std::optional<std::chrono::steady_clock::time_point> deadline) {
    PriceOut(cost);
    const long cap = 50L * (static_cast<long>(rows_.size()) + num_cols_);
    int streak = 0;
    bool fresh = true;
    for (long it = 0; it < cap; ++it) {
      if (deadline && (it & 63) == 0 && std::chrono::steady_clock::now() > *deadline) {
        return false;
      }
      const bool bland = streak > 50;
      int q = -1;
      for (int j = 0; j < first_art_; ++j) {
        if (d_[j] <= kCostTol) continue;
        if (bland) {
          q = j;
          break;
        }
        if (q < 0 || d_[j] > d_[q]) q = j;
      }
      if (q < 0) {
        // Incremental reduced costs drift; confirm with fresh ones.
        if (fresh) return true;
        PriceOut(cost);
        fresh = true;
        continue;
      }
      fresh = false;
      // Harris ratio test: bound the step with a small feasibility slack,
      // then take the largest pivot among rows within that bound.
      double bound = std::numeric_limits<double>::infinity();
      bool blocked = false;
      for (size_t i = 0; i < rows_.size(); ++i) {
        const double* a = Find(rows_[i], q);
        if (!a) continue;
        // A basic artificial already at zero must stay there, so it blocks
        // either sign.
        const bool art = basis_[i] >= first_art_ && rhs_[i] <= kFeasTol;
        if (art ? std::fabs(*a) <= kPivotTol : *a <= kPivotTol) continue;
        blocked = true;
        bound = std::min(bound, art ? 0.0 : (std::max(rhs_[i], 0.0) + kFeasTol) / *a);
      }
      int r = -1;
      double best = 0, best_a = 0;
      if (blocked) {
        for (size_t i = 0; i < rows_.size(); ++i) {
          const double* a = Find(rows_[i], q);
          if (!a) continue;
          const bool art = basis_[i] >= first_art_ && rhs_[i] <= kFeasTol;
          if (art ? std::fabs(*a) <= kPivotTol : *a <= kPivotTol) continue;
          const double ratio = art ? 0.0 : std::max(rhs_[i], 0.0) / *a;
          if (ratio > bound) continue;
          const bool take = r < 0 || (bland ? basis_[i] < basis_[r] : std::fabs(*a) > best_a);
          if (take) {
            r = static_cast<int>(i);
            best = ratio;
            best_a = std::fabs(*a);
          }
        }
      }
      if (r < 0) return true;  // unbounded: the exact pass decides
      // Steps that barely move the objective count as degenerate.
      streak = d_[q] * best <= 1e-9 ? streak + 1 : 0;
      Pivot(r, q);
    }
    return false;
  }

  const std::vector<int>& basis() const { return basis_; }

  void DriveOutArtificials() {
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_art_) continue;
      int best = -1;
      double best_a = kPivotTol;
      for (const auto& [c, v] : rows_[i]) {
        if (c < first_art_ && std::fabs(v) > best_a) {
          best = c;
          best_a = std::fabs(v);
        }
      }
      if (best >= 0) Pivot(static_cast<int>(i), best);
    }
  }

 private:
  void PriceOut(const std::vector<double>& cost) {
    d_ = cost;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (const auto& [c, v] : rows_[i]) d_[c] -= cb * v;
    }
  }

  void Pivot(int r, int q) {
    FRow& pr = rows_[r];
    const double inv = 1.0 / *Find(pr, q);
    for (auto& [c, v] : pr) v *= inv;
    rhs_[r] *= inv;
    FRow merged;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const double* a = Find(rows_[i], q);
      if (!a) continue;
      const double f = *a;
      merged.clear();
      const FRow& row = rows_[i];
      size_t x = 0, y = 0;
      while (x < row.size() || y < pr.size()) {
        if (y == pr.size() || (x < row.size() && row[x].first < pr[y].first)) {
          merged.push_back(row[x++]);
        } else if (x == row.size() || pr[y].first < row[x].first) {
          const double v = -f * pr[y].second;
          if (std::fabs(v) > kDropTol) merged.emplace_back(pr[y].first, v);
          ++y;
        } else {
          const double v = row[x].second - f * pr[y].second;
          if (std::fabs(v) > kDropTol && row[x].first != q) merged.emplace_back(row[x].first, v);
          ++x;
          ++y;
        }
      }
      rows_[i].swap(merged);
      rhs_[i] -= f * rhs_[r];
      if (std::fabs(rhs_[i]) < kDropTol || (rhs_[i] < 0 && rhs_[i] > -kFeasTol)) rhs_[i] = 0;
    }
    const double dq = d_[q];
    if (dq != 0) {
      for (const auto& [c, v] : pr) d_[c] -= dq * v;
    }
    d_[q] = 0;
    basis_[r] = q;
  }

  std::vector<FRow> rows_;
  std::vector<double> rhs_, d_;
  std::vector<int> basis_;
  int first_art_;
  int num_cols_;
};

}  // namespace

std::optional<std::vector<int>> FloatSimplexBasis(
    const SparseTableau& t, const std::vector<int>& basis, int first_artificial,
    int num_cols, const RationalVector& cost,
    std::optional<std::chrono::steady_clock::time_point> deadline) {
  FloatSimplex fs(t, basis, first_artificial, num_cols);
  std::vector<double> phase1(num_cols, 0);
  bool any = false;
  for (int j = first_artificial; j < num_cols; ++j) {
    phase1[j] = -1;
    any = true;
  }
  if (any && !fs.Optimize(phase1, deadline)) return std::nullopt;
  fs.DriveOutArtificials();
  std::vector<double> phase2(num_cols);
  for (int j = 0; j < num_cols; ++j) phase2[j] = cost[j].get_d();
  if (!fs.Optimize(phase2, deadline)) return std::nullopt;
  return fs.basis();
}

}  // namespace qpsse
