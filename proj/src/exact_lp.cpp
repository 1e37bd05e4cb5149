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


#include "qpsse/exact_lp.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "qpsse/float_simplex.hpp"
#include "qpsse/simplex_kernels.hpp"

namespace qpsse {

int ExactLP::AddVariable(const Rational& cost, std::optional<Rational> lb,
                         std::string name) {
  c.push_back(cost);
  lower.push_back(std::move(lb));
  var_names.push_back(std::move(name));
  return num_vars() - 1;
}

int ExactLP::AddRow(std::vector<std::pair<int, Rational>> coeffs, RowType type,
                    const Rational& rhs, std::string name) {
  rows.push_back(LpRow{std::move(coeffs), type, rhs, std::move(name)});
  return static_cast<int>(rows.size()) - 1;
}

void ExactLP::Validate() const {
  if (lower.size() != c.size() || var_names.size() != c.size()) {
    throw std::invalid_argument("LP variable arrays have inconsistent sizes");
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, a] : rows[i].coeffs) {
      if (j < 0 || j >= num_vars()) {
        throw std::invalid_argument("LP row " + std::to_string(i) +
                                    " references variable " + std::to_string(j));
      }
    }
  }
}

std::string_view StatusName(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kTimeLimit:
      return "time-limit";
  }
  return "?";
}

namespace {

class TimeLimit : public std::exception {};

// Standard form: max c'x' s.t. rows x' = rhs >= 0, x' >= 0. Columns are
// structural, then slacks, then artificials.
class Simplex {
 public:
  Simplex(const ExactLP& lp, const SolveOptions& options)
      : lp_(lp), options_(options) {}

  LpSolution Run() {
    Build();
    LpSolution sol;
    try {
      const WarmResult warm = options_.float_start ? WarmStart() : WarmResult::kSkipped;
      const bool feasible = warm == WarmResult::kSkipped ? PhaseOne() : warm == WarmResult::kFeasible;
      if (!feasible) {
        sol.status = LpStatus::kInfeasible;
      } else if (!PhaseTwo()) {
        sol.status = LpStatus::kUnbounded;
      } else {
        sol.status = LpStatus::kOptimal;
        Extract(sol);
      }
    } catch (const TimeLimit&) {
      sol.status = LpStatus::kTimeLimit;
    }
    sol.pivots = pivots_;
    return sol;
  }

 private:
  void Build() {
    const int n = lp_.num_vars();
    col_plus_.assign(n, -1);
    col_minus_.assign(n, -1);
    int cols = 0;
    for (int j = 0; j < n; ++j) {
      col_plus_[j] = cols++;
      if (!lp_.lower[j]) col_minus_[j] = cols++;
    }
    num_structural_ = cols;
    const int m = static_cast<int>(lp_.rows.size());
    slack_col_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      if (lp_.rows[i].type != RowType::kEq) slack_col_[i] = cols++;
    }
    sign_.assign(m, 1);
    init_col_.assign(m, -1);
    basis_.assign(m, -1);
    t_.rows.assign(m, {});
    t_.rhs.assign(m, 0);
    std::vector<int> artificial_rows;
    for (int i = 0; i < m; ++i) {
      const LpRow& row = lp_.rows[i];
      std::map<int, Rational> acc;
      Rational b = row.rhs;
      for (const auto& [j, a] : row.coeffs) {
        if (lp_.lower[j]) {
          b -= a * *lp_.lower[j];
          acc[col_plus_[j]] += a;
        } else {
          acc[col_plus_[j]] += a;
          acc[col_minus_[j]] -= a;
        }
      }
      Rational slack_coeff = 0;
      if (row.type == RowType::kLe) slack_coeff = 1;
      if (row.type == RowType::kGe) slack_coeff = -1;
      if (slack_col_[i] >= 0) acc[slack_col_[i]] = slack_coeff;
      if (b < 0) {
        sign_[i] = -1;
        b = -b;
        slack_coeff = -slack_coeff;
        for (auto& [col, v] : acc) v = -v;
      }
      for (auto& [col, v] : acc) {
        if (sgn(v) != 0) t_.rows[i].emplace_back(col, v);
      }
      t_.rhs[i] = b;
      if (slack_coeff == 1) {
        init_col_[i] = basis_[i] = slack_col_[i];
      } else {
        artificial_rows.push_back(i);
      }
    }
    first_artificial_ = cols;
    for (int i : artificial_rows) {
      t_.rows[i].emplace_back(cols, 1);
      init_col_[i] = basis_[i] = cols++;
    }
    num_cols_ = cols;
    cost_.assign(num_cols_, 0);
    const bool negate = lp_.sense == Sense::kMin;
    for (int j = 0; j < n; ++j) {
      const Rational cj = negate ? Rational(-lp_.c[j]) : lp_.c[j];
      cost_[col_plus_[j]] = cj;
      if (col_minus_[j] >= 0) cost_[col_minus_[j]] = -cj;
    }
  }

  bool IsArtificial(int col) const { return col >= first_artificial_; }

  // d = cost - c_B^T T, z = -(c_B^T rhs).
  void PriceOut(const RationalVector& cost) {
    d_ = cost;
    z_ = 0;
    for (size_t i = 0; i < t_.rows.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (const auto& [col, v] : t_.rows[i]) d_[col] -= cb * v;
      z_ -= cb * t_.rhs[i];
    }
  }

  void Pivot(int r, int q) {
    NormalizePivotRow(t_, r, q);
    if (options_.parallel) {
      EliminateParallel(t_, r, q);
    } else {
      EliminateSerial(t_, r, q);
    }
    const Rational dq = d_[q];
    if (sgn(dq) != 0) {
      for (const auto& [col, v] : t_.rows[r]) d_[col] -= dq * v;
      z_ -= dq * t_.rhs[r];
    }
    basis_[r] = q;
    ++pivots_;
    if (options_.deadline && (pivots_ & 15) == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      throw TimeLimit();
    }
  }

  int ChooseEntering(bool bland) const {
    int best = -1;
    for (int j = 0; j < first_artificial_; ++j) {
      if (sgn(d_[j]) <= 0) continue;
      if (bland) return j;
      if (best < 0 || d_[j] > d_[best]) best = j;
    }
    return best;
  }

  // Minimum ratio; ties go to the smallest basic column index.
  int ChooseLeaving(int q) const {
    int best = -1;
    Rational best_num, best_den;
    for (int i = 0; i < static_cast<int>(t_.rows.size()); ++i) {
      const Rational* a = FindEntry(t_.rows[i], q);
      if (!a || sgn(*a) <= 0) continue;
      if (best < 0) {
        best = i;
        best_num = t_.rhs[i];
        best_den = *a;
        continue;
      }
      const int cmp = cmp_rat(t_.rhs[i] * best_den, best_num * *a);
      if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[best])) {
        best = i;
        best_num = t_.rhs[i];
        best_den = *a;
      }
    }
    return best;
  }

  static int cmp_rat(const Rational& a, const Rational& b) { return cmp(a, b); }

  // Returns false on unboundedness.
  bool Optimize() {
    int degenerate_streak = 0;
    constexpr int kStreakLimit = 50;
    for (;;) {
      const bool bland =
          options_.rule == PivotRule::kBland || degenerate_streak > kStreakLimit;
      const int q = ChooseEntering(bland);
      if (q < 0) return true;
      const int r = ChooseLeaving(q);
      if (r < 0) return false;
      degenerate_streak = sgn(t_.rhs[r]) == 0 ? degenerate_streak + 1 : 0;
      Pivot(r, q);
    }
  }

  bool PhaseOne() {
    RationalVector cost(num_cols_, 0);
    bool any = false;
    for (int j = first_artificial_; j < num_cols_; ++j) {
      cost[j] = -1;
      any = true;
    }
    if (!any) return true;
    PriceOut(cost);
    Optimize();
    if (sgn(z_) != 0) return false;
    // Zero-level artificials leave the basis where possible.
    DriveOutArtificials();
    return true;
  }

  enum class WarmResult { kSkipped, kFeasible, kInfeasible };

  // Moves to the basis proposed by a double-precision pass. Rows where that
  // basis is exactly infeasible get a fresh artificial and phase one repairs
  // them from there. kSkipped leaves the tableau untouched.
  WarmResult WarmStart() {
    const auto guess = FloatSimplexBasis(t_, basis_, first_artificial_, num_cols_, cost_,
                                         options_.deadline);
    if (!guess) return WarmResult::kSkipped;
    const int m = static_cast<int>(t_.rows.size());
    d_.assign(num_cols_, 0);
    z_ = 0;
    std::vector<char> target(num_cols_, 0), basic(num_cols_, 0);
    for (int q : *guess) target[q] = 1;
    for (int q : basis_) basic[q] = 1;
    for (int r0 = 0; r0 < m; ++r0) {
      const int q = (*guess)[r0];
      if (basic[q]) continue;
      int r = -1;
      if (!target[basis_[r0]] && FindEntry(t_.rows[r0], q)) {
        r = r0;
      } else {
        for (int i = 0; i < m && r < 0; ++i) {
          if (!target[basis_[i]] && FindEntry(t_.rows[i], q)) r = i;
        }
      }
      if (r < 0) continue;
      basic[basis_[r]] = 0;
      basic[q] = 1;
      Pivot(r, q);
    }
    bool repair = false;
    for (int i = 0; i < m; ++i) {
      if (sgn(t_.rhs[i]) < 0) {
        for (auto& [col, v] : t_.rows[i]) v = -v;
        t_.rhs[i] = -t_.rhs[i];
        t_.rows[i].emplace_back(num_cols_, 1);
        basis_[i] = num_cols_++;
        cost_.push_back(0);
        repair = true;
      } else if (IsArtificial(basis_[i]) && sgn(t_.rhs[i]) != 0) {
        repair = true;
      }
    }
    if (repair) return PhaseOne() ? WarmResult::kFeasible : WarmResult::kInfeasible;
    DriveOutArtificials();
    return WarmResult::kFeasible;
  }

  void DriveOutArtificials() {
    for (int i = 0; i < static_cast<int>(t_.rows.size()); ++i) {
      if (!IsArtificial(basis_[i])) continue;
      for (const auto& [col, v] : t_.rows[i]) {
        if (!IsArtificial(col)) {
          Pivot(i, col);
          break;
        }
      }
    }
  }

  bool PhaseTwo() {
    PriceOut(cost_);
    return Optimize();
  }

  void Extract(LpSolution& sol) const {
    const int n = lp_.num_vars();
    const int m = static_cast<int>(lp_.rows.size());
    RationalVector xs(num_cols_, 0);
    for (int i = 0; i < m; ++i) xs[basis_[i]] = t_.rhs[i];
    sol.primal.assign(n, 0);
    for (int j = 0; j < n; ++j) {
      if (lp_.lower[j]) {
        sol.primal[j] = *lp_.lower[j] + xs[col_plus_[j]];
      } else {
        sol.primal[j] = xs[col_plus_[j]] - xs[col_minus_[j]];
      }
    }
    const bool negate = lp_.sense == Sense::kMin;
    sol.dual.assign(m, 0);
    for (int i = 0; i < m; ++i) {
      // The initial basic column of row i has zero phase-two cost, so its
      // reduced cost is -y_i.
      Rational y = -d_[init_col_[i]] * sign_[i];
      sol.dual[i] = negate ? Rational(-y) : y;
    }
    sol.reduced = lp_.c;
    for (int i = 0; i < m; ++i) {
      if (sgn(sol.dual[i]) == 0) continue;
      for (const auto& [j, a] : lp_.rows[i].coeffs) sol.reduced[j] -= a * sol.dual[i];
    }
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += lp_.c[j] * sol.primal[j];
  }

  const ExactLP& lp_;
  const SolveOptions& options_;
  SparseTableau t_;
  RationalVector d_;
  Rational z_;
  RationalVector cost_;
  std::vector<int> col_plus_, col_minus_, slack_col_, init_col_, basis_, sign_;
  int num_structural_ = 0;
  int first_artificial_ = 0;
  int num_cols_ = 0;
  long pivots_ = 0;
};

}  // namespace

LpSolution Solve(const ExactLP& lp, const SolveOptions& options) {
  lp.Validate();
  Simplex simplex(lp, options);
  LpSolution sol = simplex.Run();
  if (options.verify && sol.status == LpStatus::kOptimal) {
    const std::string err = VerifySolution(lp, sol);
    if (!err.empty()) throw std::logic_error("LP certificate check failed: " + err);
  }
  return sol;
}

std::string VerifySolution(const ExactLP& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::kOptimal) return "solution not optimal";
  const int n = lp.num_vars();
  const bool max = lp.sense == Sense::kMax;
  if (static_cast<int>(sol.primal.size()) != n ||
      sol.dual.size() != lp.rows.size() || static_cast<int>(sol.reduced.size()) != n) {
    return "solution vectors have wrong sizes";
  }
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j] && sol.primal[j] < *lp.lower[j]) {
      return "variable " + std::to_string(j) + " below its lower bound";
    }
  }
  RationalVector d = lp.c;
  Rational dual_obj = 0;
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const LpRow& row = lp.rows[i];
    Rational lhs = 0;
    for (const auto& [j, a] : row.coeffs) {
      lhs += a * sol.primal[j];
      d[j] -= a * sol.dual[i];
    }
    const Rational slack = lhs - row.rhs;
    const std::string where = "row " + std::to_string(i) + " (" + row.name + ")";
    if ((row.type == RowType::kLe && slack > 0) ||
        (row.type == RowType::kGe && slack < 0) ||
        (row.type == RowType::kEq && slack != 0)) {
      return where + " violated";
    }
    const int ys = sgn(sol.dual[i]);
    if ((row.type == RowType::kLe && ys * (max ? 1 : -1) < 0) ||
        (row.type == RowType::kGe && ys * (max ? -1 : 1) < 0)) {
      return where + " dual has the wrong sign";
    }
    if (ys != 0 && slack != 0) return where + " breaks complementary slackness";
    dual_obj += row.rhs * sol.dual[i];
  }
  for (int j = 0; j < n; ++j) {
    if (d[j] != sol.reduced[j]) return "reduced cost mismatch at variable " + std::to_string(j);
    const int ds = sgn(d[j]);
    if (!lp.lower[j]) {
      if (ds != 0) return "free variable " + std::to_string(j) + " has nonzero reduced cost";
      continue;
    }
    if (ds * (max ? 1 : -1) > 0) {
      return "variable " + std::to_string(j) + " has an improving reduced cost";
    }
    if (ds != 0 && sol.primal[j] != *lp.lower[j]) {
      return "variable " + std::to_string(j) + " breaks complementary slackness";
    }
    dual_obj += d[j] * *lp.lower[j];
  }
  Rational primal_obj = 0;
  for (int j = 0; j < n; ++j) primal_obj += lp.c[j] * sol.primal[j];
  if (primal_obj != sol.objective) return "objective does not match primal";
  if (primal_obj != dual_obj) return "strong duality fails";
  return "";
}

std::string DumpLp(const ExactLP& lp) {
  std::ostringstream out;
  auto name = [&](int j) {
    return lp.var_names[j].empty() ? "x" + std::to_string(j) : lp.var_names[j];
  };
  out << (lp.sense == Sense::kMax ? "maximize" : "minimize") << "\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (sgn(lp.c[j]) != 0) out << "  " << ToString(lp.c[j]) << " " << name(j) << "\n";
  }
  out << "subject to\n";
  for (const LpRow& row : lp.rows) {
    out << "  " << (row.name.empty() ? "-" : row.name) << ":";
    for (const auto& [j, a] : row.coeffs) out << " " << ToString(a) << " " << name(j);
    out << (row.type == RowType::kLe   ? " <= "
            : row.type == RowType::kGe ? " >= "
                                       : " = ")
        << ToString(row.rhs) << "\n";
  }
  out << "bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    out << "  " << name(j) << " "
        << (lp.lower[j] ? ">= " + ToString(*lp.lower[j]) : std::string("free")) << "\n";
  }
  return out.str();
}

}  // namespace qpsse
