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


#include "qpsse/sefce.hpp"

#include <algorithm>
#include <limits>

#include "qpsse/best_response.hpp"

namespace qpsse {

void RequireSupported(const PerturbedInstance& inst) {
  if (inst.ctx->game.HasChance()) {
    throw UnsupportedGame("chance nodes unsupported by SEFCE LP");
  }
  for (const Rational& b : InfosetBudgets(inst, PlayerId::kFollower)) {
    if (b < 0) throw UnsupportedGame("negative follower infoset budget unsupported");
  }
}

namespace {

using Coeffs = std::vector<std::pair<int, Rational>>;

constexpr int kAbsent = -1;  // pair not relevant: no variable
constexpr int kZero = -2;    // pair fixed at zero by forcing

// Follower infoset whose extension is sequence s; -1 for the empty sequence.
int InfosetOfSeq(const PlayerSequences& ps, int s) { return ps.seqs[s].infoset; }

int ParentInfoset(const PlayerSequences& ps, int infoset) {
  return InfosetOfSeq(ps, ps.infoset_seq[infoset]);
}

// Infosets at or below J, J first, parents before children.
std::vector<int> InfosetsBelow(const PlayerSequences& ps, int j) {
  std::vector<int> out = {j};
  for (size_t k = 0; k < out.size(); ++k) {
    for (int s : ps.extension[out[k]]) {
      for (int child : ps.child_infosets[s]) out.push_back(child);
    }
  }
  return out;
}

std::vector<int> InfosetDepths(const GameTree& g) {
  std::vector<int> depth;
  for (int gid : g.PlayerInfosets(PlayerId::kFollower)) {
    int d = std::numeric_limits<int>::max();
    for (int n : g.infoset(gid).nodes) d = std::min(d, g.node(n).depth);
    depth.push_back(d);
  }
  return depth;
}

std::vector<Coeffs> Columns(const SparseMatrix& a) {
  std::vector<Coeffs> cols(a.cols);
  for (const auto& [rc, v] : a.entries) cols[rc.second].emplace_back(rc.first, v);
  return cols;
}

void AddLeaderFlow(ExactLP& lp, const SeqFormMatrices& m, const std::vector<int>& r_var) {
  std::vector<Coeffs> rows(m.F[0].rows);
  for (const auto& [rc, v] : m.F[0].entries) rows[rc.first].emplace_back(r_var[rc.second], v);
  for (int r = 0; r < m.F[0].rows; ++r) {
    lp.AddRow(std::move(rows[r]), RowType::kEq, m.f[0][r], "leader_flow" + std::to_string(r));
  }
}

SolveOptions LpOptions(const SseOptions& o) {
  SolveOptions s;
  s.rule = o.rule;
  s.parallel = o.parallel;
  s.deadline = o.deadline;
  return s;
}

class BlockBuilder {
 public:
  BlockBuilder(const PerturbedInstance& inst, const BnBNode& node, SefceLp& model,
               const std::vector<Coeffs>& uf_cols)
      : inst_(inst),
        node_(node),
        model_(model),
        uf_cols_(uf_cols),
        L_(inst.ctx->sf.seqs(PlayerId::kLeader)),
        F_(inst.ctx->sf.seqs(PlayerId::kFollower)),
        rel_(inst.ctx->rel) {}

  void Build(int j, const Rational& beta) {
    SefceBlock block;
    block.infoset = j;
    block.beta = beta;
    ExactLP& lp = model_.lp;
    const std::string tag = "J" + std::to_string(j);
    infosets_ = InfosetsBelow(F_, j);
    origin_ = F_.infoset_seq[j];
    std::vector<int> seqs;
    for (int i : infosets_) {
      for (int s : F_.extension[i]) seqs.push_back(s);
    }
    // p variables, with sequences below a forced-out action fixed at zero.
    std::vector<char> zeroed(F_.size(), 0);
    for (int i : infosets_) {
      for (size_t a = 0; a < F_.extension[i].size(); ++a) {
        const int s = F_.extension[i][a];
        zeroed[s] = zeroed[F_.infoset_seq[i]] ||
                    node_.IsExcluded(i, static_cast<int>(a));
      }
    }
    zeroed[origin_] = 0;
    for (int sf : seqs) {
      for (int sl : rel_.rel_follower[sf]) {
        block.p_var[{sl, sf}] =
            zeroed[sf] ? kZero
                       : lp.AddVariable(0, Rational(0),
                                        "p" + tag + "[" + std::to_string(sl) + "," +
                                            std::to_string(sf) + "]");
      }
    }
    block_ = &block;

    // Leader flow for each follower sequence of the block.
    for (int sf : seqs) {
      for (size_t k = 0; k < L_.infoset_seq.size(); ++k) {
        std::vector<int> ids;
        for (int sl : L_.extension[k]) ids.push_back(sl);
        const int parent = P(L_.infoset_seq[k], sf);
        if (parent == kAbsent) continue;
        Coeffs row;
        bool complete = true;
        for (int sl : ids) {
          const int v = P(sl, sf);
          if (v == kAbsent) complete = false;
          if (v >= 0) row.emplace_back(v, 1);
        }
        if (!complete) continue;
        if (parent >= 0) row.emplace_back(parent, -1);
        if (!row.empty()) lp.AddRow(std::move(row), RowType::kEq, 0, tag + "_lflow");
      }
    }
    // Follower flow for each leader sequence.
    for (int sl = 0; sl < L_.size(); ++sl) {
      for (int i : infosets_) {
        const int parent = P(sl, F_.infoset_seq[i]);
        if (parent == kAbsent) continue;
        Coeffs row;
        bool complete = true;
        for (int sf : F_.extension[i]) {
          const int v = P(sl, sf);
          if (v == kAbsent) complete = false;
          if (v >= 0) row.emplace_back(v, 1);
        }
        if (!complete) continue;
        if (parent >= 0) row.emplace_back(parent, -1);
        if (!row.empty()) lp.AddRow(std::move(row), RowType::kEq, 0, tag + "_fflow");
      }
    }
    // v(sf): value of following the recommendations from sf on.
    std::map<int, int> v_seq;
    for (int sf : seqs) v_seq[sf] = lp.AddVariable(0, std::nullopt, "v" + tag);
    for (int sf : seqs) {
      Coeffs row = {{v_seq[sf], 1}};
      AddPayoffTerms(row, sf, sf);
      for (int i : F_.child_infosets[sf]) {
        for (int s : F_.extension[i]) row.emplace_back(v_seq[s], -1);
      }
      lp.AddRow(std::move(row), RowType::kEq, 0, tag + "_value");
    }
    // v(I, sf) for sf recommended at I or at an ancestor infoset within the block.
    std::map<std::pair<int, int>, int> v_dev;
    for (int i : infosets_) {
      for (int anc = i;; anc = ParentInfoset(F_, anc)) {
        for (int sf : F_.extension[anc]) {
          v_dev[{i, sf}] = lp.AddVariable(0, std::nullopt, "w" + tag);
        }
        if (anc == j) break;
      }
    }
    for (const auto& [key, var] : v_dev) {
      const auto [i, sf] = key;
      for (int dev : F_.extension[i]) {
        Coeffs row = {{var, 1}};
        AddPayoffTerms(row, sf, dev);
        for (int child : F_.child_infosets[dev]) row.emplace_back(v_dev.at({child, sf}), -1);
        lp.AddRow(std::move(row), RowType::kGe, 0, tag + "_dev");
      }
    }
    for (int i : infosets_) {
      for (int sf : F_.extension[i]) {
        lp.AddRow({{v_seq[sf], 1}, {v_dev.at({i, sf}), -1}}, RowType::kEq, 0, tag + "_follow");
      }
    }
    model_.blocks.push_back(std::move(block));
    block_ = nullptr;
  }

 private:
  // Variable for p_J(sl, sf): the leader plan at the origin sequence.
  int P(int sl, int sf) const {
    if (sf == origin_) return model_.r_leader_var[sl];
    auto it = block_->p_var.find({sl, sf});
    return it == block_->p_var.end() ? kAbsent : it->second;
  }

  // row -= sum_sl p(sl, rec) * U_f[sl, played].
  void AddPayoffTerms(Coeffs& row, int rec, int played) const {
    for (const auto& [sl, u] : uf_cols_[played]) {
      const int v = P(sl, rec);
      if (v == kAbsent) throw std::logic_error("payoff pair outside the relevance map");
      if (v >= 0) row.emplace_back(v, -u);
    }
  }

  const PerturbedInstance& inst_;
  const BnBNode& node_;
  SefceLp& model_;
  const std::vector<Coeffs>& uf_cols_;
  const PlayerSequences& L_;
  const PlayerSequences& F_;
  const RelevanceMap& rel_;
  std::vector<int> infosets_;
  int origin_ = 0;
  const SefceBlock* block_ = nullptr;
};

}  // namespace

SefceLp BuildSefceLp(const PerturbedInstance& inst, const BnBNode& node) {
  RequireSupported(inst);
  const GameContext& ctx = *inst.ctx;
  const PlayerSequences& L = ctx.sf.seqs(PlayerId::kLeader);
  const PlayerSequences& F = ctx.sf.seqs(PlayerId::kFollower);
  SefceLp model;
  ExactLP& lp = model.lp;
  lp.sense = Sense::kMax;
  const RationalVector& xi_l = inst.Xi(PlayerId::kLeader);
  for (int s = 0; s < L.size(); ++s) {
    model.r_leader_var.push_back(lp.AddVariable(0, xi_l[s], "r[" + std::to_string(s) + "]"));
  }
  AddLeaderFlow(lp, ctx.m, model.r_leader_var);

  const std::vector<Coeffs> uf_cols = Columns(ctx.m.U[1]);
  const RationalVector beta = InfosetBudgets(inst, PlayerId::kFollower);
  BlockBuilder builder(inst, node, model, uf_cols);
  std::vector<int> block_of(F.infoset_seq.size(), -1);
  for (size_t j = 0; j < beta.size(); ++j) {
    if (sgn(beta[j]) <= 0) continue;
    block_of[j] = static_cast<int>(model.blocks.size());
    builder.Build(static_cast<int>(j), beta[j]);
  }

  // Objective: u_l(h) [xi_f(sf) r_l(sl) + sum_J beta_J p_J(sl, sf)].
  const RationalVector& xi_f = inst.Xi(PlayerId::kFollower);
  for (const auto& [rc, u] : ctx.m.U[0].entries) {
    const auto [sl, sf] = rc;
    lp.c[model.r_leader_var[sl]] += u * xi_f[sf];
    for (int i = F.seqs[sf].infoset; i >= 0; i = ParentInfoset(F, i)) {
      if (block_of[i] < 0) continue;
      const SefceBlock& block = model.blocks[block_of[i]];
      auto it = block.p_var.find({sl, sf});
      if (it == block.p_var.end()) throw std::logic_error("terminal pair not relevant");
      if (it->second >= 0) lp.c[it->second] += block.beta * u;
    }
  }
  return model;
}

RationalVector RecommendedMass(const PerturbedInstance& inst, const SefceLp& model,
                               const LpSolution& sol) {
  RationalVector mass(inst.ctx->sf.seqs(PlayerId::kFollower).size(), 0);
  for (const SefceBlock& block : model.blocks) {
    for (const auto& [key, var] : block.p_var) {
      if (var >= 0) mass[key.second] += sol.primal[var];
    }
  }
  return mass;
}

Rational RecommendedMass(const PerturbedInstance& inst, const SefceLp& model,
                         const LpSolution& sol, int infoset, int action) {
  const int s = inst.ctx->sf.seqs(PlayerId::kFollower).extension[infoset][action];
  return RecommendedMass(inst, model, sol)[s];
}

namespace {

int PositiveActions(const PlayerSequences& ps, const RationalVector& mass, int i) {
  int n = 0;
  for (int s : ps.extension[i]) n += sgn(mass[s]) > 0 ? 1 : 0;
  return n;
}

std::vector<int> OrderActions(const PlayerSequences& ps, const RationalVector& mass, int i) {
  std::vector<int> actions(ps.extension[i].size());
  for (size_t a = 0; a < actions.size(); ++a) actions[a] = static_cast<int>(a);
  std::stable_sort(actions.begin(), actions.end(), [&](int a, int b) {
    return mass[ps.extension[i][a]] > mass[ps.extension[i][b]];
  });
  return actions;
}

Choice ChoiceFromMass(const PlayerSequences& ps, const RationalVector& mass,
                      const std::map<int, int>& forced) {
  Choice c(ps.extension.size(), -1);
  for (size_t i = 0; i < c.size(); ++i) {
    for (size_t a = 0; a < ps.extension[i].size(); ++a) {
      if (sgn(mass[ps.extension[i][a]]) > 0) {
        c[i] = static_cast<int>(a);
        break;
      }
    }
    if (c[i] < 0) {
      auto it = forced.find(static_cast<int>(i));
      if (it != forced.end()) c[i] = it->second;
    }
  }
  return c;
}

}  // namespace

bool IsResidualPure(const PerturbedInstance& inst, const SefceLp& model,
                    const LpSolution& sol) {
  const PlayerSequences& ps = inst.ctx->sf.seqs(PlayerId::kFollower);
  const RationalVector mass = RecommendedMass(inst, model, sol);
  for (size_t i = 0; i < ps.extension.size(); ++i) {
    if (PositiveActions(ps, mass, static_cast<int>(i)) > 1) return false;
  }
  return true;
}

std::optional<BranchChoice> BranchSelect(const PerturbedInstance& inst,
                                         const SefceLp& model, const LpSolution& sol) {
  const PlayerSequences& ps = inst.ctx->sf.seqs(PlayerId::kFollower);
  const RationalVector mass = RecommendedMass(inst, model, sol);
  const std::vector<int> depth = InfosetDepths(inst.ctx->game);
  int best = -1;
  for (int i = 0; i < static_cast<int>(ps.extension.size()); ++i) {
    if (PositiveActions(ps, mass, i) < 2) continue;
    if (best < 0 || depth[i] < depth[best]) best = i;
  }
  if (best < 0) return std::nullopt;
  return BranchChoice{best, OrderActions(ps, mass, best)};
}

namespace {

// Residual inflow per infoset and residual per sequence when routed along c.
void RouteResidual(const PerturbedInstance& inst, const Choice& c, RationalVector& inflow,
                   RationalVector& residual, bool require_specified) {
  const PlayerSequences& ps = inst.ctx->sf.seqs(PlayerId::kFollower);
  const RationalVector beta = InfosetBudgets(inst, PlayerId::kFollower);
  inflow.assign(ps.extension.size(), 0);
  residual.assign(ps.size(), 0);
  for (int s = 0; s < ps.size(); ++s) {
    for (int i : ps.child_infosets[s]) {
      inflow[i] = beta[i] + residual[s];
      if (sgn(inflow[i]) == 0) continue;
      if (c[i] < 0) {
        if (require_specified) {
          throw std::invalid_argument("choice unspecified at a controlled infoset");
        }
        continue;
      }
      residual[ps.extension[i][c[i]]] = inflow[i];
    }
  }
}

}  // namespace

std::vector<bool> ControlledInfosets(const PerturbedInstance& inst, const Choice& c) {
  RationalVector inflow, residual;
  RouteResidual(inst, c, inflow, residual, false);
  std::vector<bool> out;
  for (const Rational& m : inflow) out.push_back(sgn(m) > 0);
  return out;
}

RationalVector FollowerPlanForChoice(const PerturbedInstance& inst, const Choice& c) {
  RationalVector inflow, residual;
  RouteResidual(inst, c, inflow, residual, true);
  const RationalVector& xi = inst.Xi(PlayerId::kFollower);
  for (size_t s = 0; s < residual.size(); ++s) residual[s] += xi[s];
  return residual;
}

LeaderLpResult LeaderLpGivenChoice(const PerturbedInstance& inst, const Choice& c,
                                   const SolveOptions& options) {
  const GameContext& ctx = *inst.ctx;
  const PlayerSequences& L = ctx.sf.seqs(PlayerId::kLeader);
  const PlayerSequences& F = ctx.sf.seqs(PlayerId::kFollower);
  const RationalVector r_f = FollowerPlanForChoice(inst, c);
  const std::vector<bool> controlled = ControlledInfosets(inst, c);
  ExactLP lp;
  lp.sense = Sense::kMax;
  std::vector<int> r_var;
  const RationalVector& xi_l = inst.Xi(PlayerId::kLeader);
  for (int s = 0; s < L.size(); ++s) r_var.push_back(lp.AddVariable(0, xi_l[s]));
  for (const auto& [rc, u] : ctx.m.U[0].entries) lp.c[r_var[rc.first]] += u * r_f[rc.second];
  AddLeaderFlow(lp, ctx.m, r_var);
  std::vector<int> v_var;
  for (size_t i = 0; i < F.extension.size(); ++i) {
    v_var.push_back(lp.AddVariable(0, std::nullopt));
  }
  const std::vector<Coeffs> uf_cols = Columns(ctx.m.U[1]);
  for (size_t i = 0; i < F.extension.size(); ++i) {
    for (size_t a = 0; a < F.extension[i].size(); ++a) {
      const int s = F.extension[i][a];
      Coeffs row = {{v_var[i], 1}};
      for (const auto& [sl, u] : uf_cols[s]) row.emplace_back(r_var[sl], -u);
      for (int child : F.child_infosets[s]) row.emplace_back(v_var[child], -1);
      const bool tight = controlled[i] && c[i] == static_cast<int>(a);
      lp.AddRow(std::move(row), tight ? RowType::kEq : RowType::kGe, 0);
    }
  }
  const LpSolution sol = Solve(lp, options);
  LeaderLpResult out;
  out.pivots = sol.pivots;
  if (sol.status == LpStatus::kTimeLimit) throw std::runtime_error("time limit");
  if (sol.status != LpStatus::kOptimal) return out;
  out.feasible = true;
  out.value = sol.objective;
  for (int v : r_var) out.r_leader.push_back(sol.primal[v]);
  return out;
}

SseResult ExtractProfile(const PerturbedInstance& inst, const SefceLp& model,
                         const LpSolution& sol) {
  if (!IsResidualPure(inst, model, sol)) {
    throw std::invalid_argument("extraction needs a residual-pure solution");
  }
  const PlayerSequences& F = inst.ctx->sf.seqs(PlayerId::kFollower);
  SseResult res;
  res.choice = ChoiceFromMass(F, RecommendedMass(inst, model, sol), {});
  res.leader.player = PlayerId::kLeader;
  for (int v : model.r_leader_var) res.leader.r.push_back(sol.primal[v]);
  res.follower = {PlayerId::kFollower, FollowerPlanForChoice(inst, res.choice)};
  const auto [ul, uf] = SequenceFormUtility(inst.ctx->m, res.leader.r, res.follower.r);
  res.leader_value = ul;
  res.follower_value = uf;
  res.found = true;
  return res;
}

namespace {

class TimedOut : public std::exception {};

}  // namespace

SseResult SolveSse(const PerturbedInstance& inst, const SseOptions& options) {
  RequireSupported(inst);
  const auto start = std::chrono::steady_clock::now();
  const PlayerSequences& F = inst.ctx->sf.seqs(PlayerId::kFollower);
  const std::vector<int> depth = InfosetDepths(inst.ctx->game);
  const SolveOptions lp_options = LpOptions(options);
  SseResult best;
  std::vector<BnBNode> stack = {BnBNode{}};
  bool root = true;

  auto push_children = [&](const BnBNode& node, int infoset, const std::vector<int>& order) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      BnBNode child = node;
      child.forced[infoset] = *it;
      child.depth = node.depth + 1;
      stack.push_back(std::move(child));
    }
  };

  try {
    while (!stack.empty()) {
      BnBNode node = std::move(stack.back());
      stack.pop_back();
      if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
        throw TimedOut();
      }
      ++best.stats.bnb_nodes;
      const SefceLp model = BuildSefceLp(inst, node);
      const LpSolution sol = Solve(model.lp, lp_options);
      ++best.stats.lp_solves;
      best.stats.pivots += sol.pivots;
      if (sol.status == LpStatus::kTimeLimit) throw TimedOut();
      if (sol.status == LpStatus::kUnbounded) throw std::logic_error("SEFCE LP unbounded");
      if (sol.status != LpStatus::kOptimal) continue;
      node.lp_value = sol.objective;
      if (root) {
        best.root_bound = sol.objective;
        root = false;
      }
      if (best.found && sol.objective <= best.leader_value) continue;
      if (auto br = BranchSelect(inst, model, sol)) {
        push_children(node, br->infoset, br->actions);
        continue;
      }
      const RationalVector mass = RecommendedMass(inst, model, sol);
      const Choice c = ChoiceFromMass(F, mass, node.forced);
      const std::vector<bool> controlled = ControlledInfosets(inst, c);
      int open = -1;
      for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (!controlled[i] || node.forced.count(i)) continue;
        if (open < 0 || depth[i] < depth[open]) open = i;
      }
      bool specified = true;
      for (size_t i = 0; i < c.size(); ++i) specified &= !(controlled[i] && c[i] < 0);
      if (specified) {
        LeaderLpResult leader;
        try {
          leader = LeaderLpGivenChoice(inst, c, lp_options);
        } catch (const std::runtime_error&) {
          throw TimedOut();
        }
        ++best.stats.lp_solves;
        best.stats.pivots += leader.pivots;
        if (leader.feasible && (!best.found || leader.value > best.leader_value)) {
          best.found = true;
          best.leader_value = leader.value;
          best.choice = c;
          best.leader = {PlayerId::kLeader, leader.r_leader};
        }
        if (leader.feasible && leader.value == sol.objective) continue;
      }
      if (open < 0) continue;
      std::vector<int> order = OrderActions(F, mass, open);
      push_children(node, open, order);
    }
  } catch (const TimedOut&) {
    best.stats.timed_out = true;
  }
  if (best.found) {
    best.follower = {PlayerId::kFollower, FollowerPlanForChoice(inst, best.choice)};
    const auto [ul, uf] = SequenceFormUtility(inst.ctx->m, best.leader.r, best.follower.r);
    if (ul != best.leader_value) throw std::logic_error("extracted value mismatch");
    best.follower_value = uf;
  }
  best.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return best;
}

AnytimeResult AnytimeQpsse(const GameContext& ctx, const PerturbationScheme& scheme,
                           const std::vector<Rational>& schedule,
                           const AnytimeOptions& options) {
  for (size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] <= 0 || schedule[k] > 1 || (k > 0 && schedule[k] >= schedule[k - 1])) {
      throw std::invalid_argument("schedule must be strictly decreasing within (0,1]");
    }
  }
  auto with_deadline = [&]() {
    SseOptions o = options.sse;
    if (options.timeout_seconds) {
      o.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(*options.timeout_seconds));
    }
    return o;
  };
  AnytimeResult out;
  const PerturbedInstance base = UnperturbedInstance(ctx);
  out.unperturbed = SolveSse(base, with_deadline());
  for (const Rational& eps : schedule) {
    AnytimeRow row;
    row.eps = eps;
    try {
      const PerturbedInstance inst = Instantiate(ctx, scheme, eps);
      row.result = SolveSse(inst, with_deadline());
      if (row.result.stats.timed_out) {
        row.error = "time limit";
      } else if (!row.result.found) {
        row.error = "no equilibrium found";
      } else {
        row.ok = true;
      }
      if (row.result.found) {
        row.loss = out.unperturbed.leader_value - row.result.leader_value;
        if (options.verify != VerifyLevel::kOff) {
          const auto cex =
              CheckResidualOptimality(inst, row.result.leader.r, row.result.follower.r);
          row.optimality_checked = true;
          if (cex) {
            throw std::logic_error("best-response property fails at follower infoset " +
                                   std::to_string(cex->infoset));
          }
        }
        if (options.verify == VerifyLevel::kParanoid) {
          if (!IsFeasiblePlan(inst, PlayerId::kLeader, row.result.leader.r) ||
              !IsFeasiblePlan(inst, PlayerId::kFollower, row.result.follower.r)) {
            throw std::logic_error("extracted plan infeasible");
          }
          const BestResponse br = SolveBestResponse(inst, row.result.leader.r);
          if (br.follower_value != row.result.follower_value) {
            throw std::logic_error("extracted follower plan is not a best response");
          }
          if (!CheckDualStructure(inst, row.result.leader.r, br.v).ok()) {
            throw std::logic_error("dual values disagree with subgame values");
          }
        }
      }
    } catch (const SchemeError& e) {
      row.error = e.what();
    } catch (const InfeasibleInstance& e) {
      row.error = e.what();
    } catch (const UnsupportedGame& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace qpsse
