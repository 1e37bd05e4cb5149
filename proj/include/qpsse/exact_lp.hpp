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


// Exact two-phase simplex over the rationals.
//
// Dual sign convention (reported for the problem as stated):
//   max: <= rows y >= 0, >= rows y <= 0, = rows free; d = c - A^T y <= 0
//   min: <= rows y <= 0, >= rows y >= 0, = rows free; d = c - A^T y >= 0
// with d_j = 0 for free variables, and c^T x = b^T y + l^T d at optimality.

#ifndef QPSSE_EXACT_LP_HPP_
#define QPSSE_EXACT_LP_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpsse/numeric.hpp"

namespace qpsse {

enum class Sense { kMax, kMin };
enum class RowType { kLe, kGe, kEq };

struct LpRow {
  std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
  RowType type = RowType::kEq;
  Rational rhs = 0;
  std::string name;
};

struct ExactLP {
  Sense sense = Sense::kMax;
  RationalVector c;
  std::vector<std::optional<Rational>> lower;  // nullopt: free variable
  std::vector<std::string> var_names;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(c.size()); }
  int AddVariable(const Rational& cost, std::optional<Rational> lb = Rational(0),
                  std::string name = "");
  int AddRow(std::vector<std::pair<int, Rational>> coeffs, RowType type,
             const Rational& rhs, std::string name = "");
  // Throws std::invalid_argument when dimensions or indices are inconsistent.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kTimeLimit };
std::string_view StatusName(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector primal;
  RationalVector dual;     // per row
  RationalVector reduced;  // per variable, d = c - A^T y
  Rational objective = 0;
  long pivots = 0;
};

enum class PivotRule {
  kBland,
  kHybrid,  // Dantzig, falling back to Bland on degenerate streaks
};

struct SolveOptions {
  PivotRule rule = PivotRule::kBland;
  bool parallel = true;
  bool verify = true;  // throws std::logic_error if a certificate check fails
  // Start the exact simplex from a basis found in double precision.
  bool float_start = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

LpSolution Solve(const ExactLP& lp, const SolveOptions& options = {});

// Empty string when the optimal solution passes primal feasibility, dual
// feasibility, strong duality and complementary slackness exactly.
std::string VerifySolution(const ExactLP& lp, const LpSolution& sol);

// Plain-text exact dump, one line per objective/row/bound.
std::string DumpLp(const ExactLP& lp);

}  // namespace qpsse

#endif  // QPSSE_EXACT_LP_HPP_
