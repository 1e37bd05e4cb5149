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


// Strong Stackelberg equilibria of perturbed games by branch-and-bound over
// a correlated-recommendation LP relaxation.
//
// The follower's residual r - xi decomposes as sum_J beta_J rho_J, where
// beta_J is the residual injected at infoset J and rho_J the pure
// continuation from J. The relaxation keeps one recommendation block per
// infoset J with beta_J > 0; all blocks share the leader plan.

#ifndef QPSSE_SEFCE_HPP_
#define QPSSE_SEFCE_HPP_

#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpsse/exact_lp.hpp"
#include "qpsse/perturbation.hpp"

namespace qpsse {

class UnsupportedGame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UnsupportedGame for chance nodes or negative follower budgets.
void RequireSupported(const PerturbedInstance& inst);

struct BnBNode {
  std::map<int, int> forced;  // follower local infoset -> forced action
  Rational lp_value = 0;
  int depth = 0;

  bool IsExcluded(int infoset, int action) const {
    auto it = forced.find(infoset);
    return it != forced.end() && it->second != action;
  }
};

struct SefceBlock {
  int infoset = -1;  // origin follower infoset J
  Rational beta;
  std::map<std::pair<int, int>, int> p_var;  // (leader seq, follower seq) -> var
};

struct SefceLp {
  ExactLP lp;
  std::vector<int> r_leader_var;
  std::vector<SefceBlock> blocks;
};

SefceLp BuildSefceLp(const PerturbedInstance& inst, const BnBNode& node);

// Per follower sequence: sum over blocks and leader sequences of p.
RationalVector RecommendedMass(const PerturbedInstance& inst, const SefceLp& model,
                               const LpSolution& sol);
Rational RecommendedMass(const PerturbedInstance& inst, const SefceLp& model,
                         const LpSolution& sol, int infoset, int action);

// At most one action with positive recommended mass at every follower infoset.
bool IsResidualPure(const PerturbedInstance& inst, const SefceLp& model,
                    const LpSolution& sol);

struct BranchChoice {
  int infoset = -1;
  std::vector<int> actions;  // descending mass, ties by index
};

// Shallowest infoset (minimum node depth, then index) with two or more
// positive-mass actions. Every action of the infoset is listed.
std::optional<BranchChoice> BranchSelect(const PerturbedInstance& inst,
                                         const SefceLp& model, const LpSolution& sol);

// A follower choice: one action per local infoset (-1 where unspecified).
using Choice = std::vector<int>;

// Infosets receiving positive residual inflow when the residual follows c.
std::vector<bool> ControlledInfosets(const PerturbedInstance& inst, const Choice& c);
// r_f = xi_f + residual routed along c. Unspecified controlled infosets throw.
RationalVector FollowerPlanForChoice(const PerturbedInstance& inst, const Choice& c);

struct LeaderLpResult {
  bool feasible = false;
  Rational value;
  RationalVector r_leader;
  long pivots = 0;
};

// Best leader plan in R_l(eps) under which routing the residual along c is a
// follower best response.
LeaderLpResult LeaderLpGivenChoice(const PerturbedInstance& inst, const Choice& c,
                                   const SolveOptions& options = {});

struct SseStats {
  long lp_solves = 0;
  long bnb_nodes = 0;
  long pivots = 0;
  double seconds = 0;
  bool timed_out = false;
};

struct SseResult {
  bool found = false;
  RealizationPlan leader, follower;
  Choice choice;
  Rational leader_value;
  Rational follower_value;
  Rational root_bound;
  SseStats stats;
};

// Reads the recommended choice and the leader marginal off a residual-pure
// relaxation solution (no optimality claim).
SseResult ExtractProfile(const PerturbedInstance& inst, const SefceLp& model,
                         const LpSolution& sol);

struct SseOptions {
  PivotRule rule = PivotRule::kHybrid;
  bool parallel = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

SseResult SolveSse(const PerturbedInstance& inst, const SseOptions& options = {});

enum class VerifyLevel { kOff, kStandard, kParanoid };

struct AnytimeOptions {
  SseOptions sse;
  std::optional<double> timeout_seconds;  // per eps
  VerifyLevel verify = VerifyLevel::kStandard;
};

struct AnytimeRow {
  Rational eps;
  bool ok = false;
  std::string error;
  SseResult result;
  Rational loss;  // unperturbed value - perturbed value
  bool optimality_checked = false;
};

struct AnytimeResult {
  SseResult unperturbed;
  std::vector<AnytimeRow> rows;
};

// Requires a strictly decreasing schedule in (0,1].
AnytimeResult AnytimeQpsse(const GameContext& ctx, const PerturbationScheme& scheme,
                           const std::vector<Rational>& schedule,
                           const AnytimeOptions& options = {});

}  // namespace qpsse

#endif  // QPSSE_SEFCE_HPP_
