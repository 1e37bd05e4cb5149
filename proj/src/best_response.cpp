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


#include "qpsse/best_response.hpp"

#include <stdexcept>

namespace qpsse {
namespace {

SolveOptions SmallLpOptions() {
  SolveOptions o;
  o.parallel = false;
  return o;
}

void RequireLeaderPlan(const PerturbedInstance& inst, const RationalVector& r) {
  const SequenceForm& sf = inst.ctx->sf;
  const RationalVector& xi = inst.Xi(PlayerId::kLeader);
  if (static_cast<int>(r.size()) != sf.seqs(PlayerId::kLeader).size()) {
    throw std::invalid_argument("leader plan has the wrong length");
  }
  for (size_t s = 0; s < r.size(); ++s) {
    if (r[s] < xi[s]) {
      throw std::invalid_argument(
          "leader plan below its lower bound at " +
          sf.SequenceName(PlayerId::kLeader, static_cast<int>(s)) + ": " +
          ToString(r[s]) + " < " + ToString(xi[s]));
    }
  }
  if (!IsRealizationPlan(sf, RealizationPlan{PlayerId::kLeader, r})) {
    throw std::invalid_argument("leader plan violates the sequence-form flow constraints");
  }
}

// (U_f^T r_l)[sigma_f]: follower payoff weight of each follower sequence.
RationalVector FollowerWeights(const GameContext& ctx, const RationalVector& r_leader) {
  return ctx.m.U[1].TransposeMultiply(r_leader);
}

}  // namespace

ExactLP BuildPrimal(const PerturbedInstance& inst, const RationalVector& r_leader) {
  RequireLeaderPlan(inst, r_leader);
  const GameContext& ctx = *inst.ctx;
  const RationalVector u = FollowerWeights(ctx, r_leader);
  const RationalVector rhs = ResidualRhs(inst, PlayerId::kFollower);
  ExactLP lp;
  lp.sense = Sense::kMax;
  for (int s = 0; s < ctx.sf.seqs(PlayerId::kFollower).size(); ++s) {
    lp.AddVariable(u[s], Rational(0), "rf[" + std::to_string(s) + "]");
  }
  const SparseMatrix& F = ctx.m.F[1];
  std::vector<std::vector<std::pair<int, Rational>>> rows(F.rows);
  for (const auto& [rc, v] : F.entries) rows[rc.first].emplace_back(rc.second, v);
  for (int r = 0; r < F.rows; ++r) {
    lp.AddRow(std::move(rows[r]), RowType::kEq, rhs[r], "flow" + std::to_string(r));
  }
  return lp;
}

ExactLP BuildDual(const PerturbedInstance& inst, const RationalVector& r_leader) {
  RequireLeaderPlan(inst, r_leader);
  const GameContext& ctx = *inst.ctx;
  const RationalVector u = FollowerWeights(ctx, r_leader);
  const RationalVector rhs = ResidualRhs(inst, PlayerId::kFollower);
  const SparseMatrix& F = ctx.m.F[1];
  ExactLP lp;
  lp.sense = Sense::kMin;
  for (int r = 0; r < F.rows; ++r) {
    lp.AddVariable(rhs[r], std::nullopt, "v[" + std::to_string(r) + "]");
  }
  std::vector<std::vector<std::pair<int, Rational>>> cols(F.cols);
  for (const auto& [rc, v] : F.entries) cols[rc.second].emplace_back(rc.first, v);
  for (int s = 0; s < F.cols; ++s) {
    lp.AddRow(std::move(cols[s]), RowType::kGe, u[s], "seq" + std::to_string(s));
  }
  return lp;
}

BestResponse SolveBestResponse(const PerturbedInstance& inst,
                               const RationalVector& r_leader,
                               const SolveOptions& options) {
  const LpSolution sol = Solve(BuildPrimal(inst, r_leader), options);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("best-response LP not optimal: " +
                           std::string(StatusName(sol.status)));
  }
  BestResponse br;
  br.residual = sol.primal;
  br.r_follower = sol.primal;
  const RationalVector& xi = inst.Xi(PlayerId::kFollower);
  for (size_t s = 0; s < xi.size(); ++s) br.r_follower[s] += xi[s];
  br.v = sol.dual;
  br.residual_value = sol.objective;
  br.follower_value =
      SequenceFormUtility(inst.ctx->m, r_leader, br.r_follower).second;
  return br;
}

Rational SubgameValue(const GameContext& ctx, const RationalVector& r_leader,
                      int follower_infoset, std::optional<int> action) {
  const PlayerSequences& ps = ctx.sf.seqs(PlayerId::kFollower);
  const RationalVector u = FollowerWeights(ctx, r_leader);
  ExactLP lp;
  lp.sense = Sense::kMax;
  std::vector<int> var_of(ps.size(), -1);
  std::vector<int> infosets = {follower_infoset};
  for (size_t k = 0; k < infosets.size(); ++k) {
    for (int s : ps.extension[infosets[k]]) {
      var_of[s] = lp.AddVariable(u[s]);
      for (int j : ps.child_infosets[s]) infosets.push_back(j);
    }
  }
  std::vector<std::pair<int, Rational>> top;
  for (int s : ps.extension[follower_infoset]) top.emplace_back(var_of[s], 1);
  lp.AddRow(std::move(top), RowType::kEq, 1);
  if (action) {
    lp.AddRow({{var_of[ps.extension[follower_infoset][*action]], 1}}, RowType::kEq, 1);
  }
  for (size_t k = 1; k < infosets.size(); ++k) {
    std::vector<std::pair<int, Rational>> row = {{var_of[ps.infoset_seq[infosets[k]]], -1}};
    for (int s : ps.extension[infosets[k]]) row.emplace_back(var_of[s], 1);
    lp.AddRow(std::move(row), RowType::kEq, 0);
  }
  const LpSolution sol = Solve(lp, SmallLpOptions());
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("subgame LP not optimal");
  return sol.objective;
}

std::optional<OptimalityViolation> CheckResidualOptimality(const PerturbedInstance& inst,
                                                    const RationalVector& r_leader,
                                                    const RationalVector& r_follower) {
  const GameContext& ctx = *inst.ctx;
  const PlayerSequences& ps = ctx.sf.seqs(PlayerId::kFollower);
  const RationalVector& xi = inst.Xi(PlayerId::kFollower);
  for (size_t k = 0; k < ps.extension.size(); ++k) {
    std::optional<Rational> all;
    for (size_t a = 0; a < ps.extension[k].size(); ++a) {
      const int s = ps.extension[k][a];
      if (r_follower[s] <= xi[s]) continue;
      if (!all) all = SubgameValue(ctx, r_leader, static_cast<int>(k));
      const Rational va = SubgameValue(ctx, r_leader, static_cast<int>(k), static_cast<int>(a));
      if (va != *all) {
        return OptimalityViolation{static_cast<int>(k), static_cast<int>(a), va, *all};
      }
    }
  }
  return std::nullopt;
}

std::string IBestResponseResult::Describe() const {
  if (ok) return "ok (sufficient condition)";
  return "violation at action " + std::to_string(action) + ": " +
         ToString(value_action) + " < " + ToString(value_all);
}

IBestResponseResult CheckIBestResponse(const GameContext& ctx,
                                       const BehavioralStrategy& leader,
                                       const BehavioralStrategy& follower,
                                       int follower_infoset) {
  if (!leader.IsCompletelyMixed()) {
    throw std::invalid_argument("I-best-response probe needs a completely mixed leader");
  }
  const RationalVector r_leader = BehavioralToRealization(ctx.sf, leader).r;
  IBestResponseResult result;
  const RationalVector& dist = follower.probs[follower_infoset];
  std::optional<Rational> all;
  for (size_t a = 0; a < dist.size(); ++a) {
    if (dist[a] <= 0) continue;
    if (!all) all = SubgameValue(ctx, r_leader, follower_infoset);
    const Rational va = SubgameValue(ctx, r_leader, follower_infoset, static_cast<int>(a));
    if (va != *all) {
      result.ok = false;
      result.action = static_cast<int>(a);
      result.value_action = va;
      result.value_all = *all;
      return result;
    }
  }
  return result;
}

std::vector<IBestResponseResult> CheckIBestResponseAll(const GameContext& ctx,
                                                       const BehavioralStrategy& leader,
                                                       const BehavioralStrategy& follower) {
  const int n = ctx.game.NumInfosets(PlayerId::kFollower);
  std::vector<IBestResponseResult> out(n);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n; ++k) out[k] = CheckIBestResponse(ctx, leader, follower, k);
  return out;
}

DualStructureReport CheckDualStructure(const PerturbedInstance& inst,
                                       const RationalVector& r_leader,
                                       const RationalVector& v) {
  const GameContext& ctx = *inst.ctx;
  const PlayerSequences& ps = ctx.sf.seqs(PlayerId::kFollower);
  const RationalVector u = FollowerWeights(ctx, r_leader);
  DualStructureReport report;
  for (int k = 0; k < static_cast<int>(ps.extension.size()); ++k) {
    const Rational all = SubgameValue(ctx, r_leader, k);
    if (v[1 + k] != all) report.value_mismatch.push_back(k);
    for (int a = 0; a < static_cast<int>(ps.extension[k].size()); ++a) {
      const int s = ps.extension[k][a];
      Rational rhs = u[s];
      for (int j : ps.child_infosets[s]) rhs += v[1 + j];
      if (v[1 + k] != rhs) continue;
      if (SubgameValue(ctx, r_leader, k, a) != all) {
        report.tight_but_suboptimal.emplace_back(k, a);
      }
    }
  }
  return report;
}

}  // namespace qpsse
