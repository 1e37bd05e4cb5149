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


#include "qpsse/perturbation.hpp"

#include <fstream>
#include <sstream>

#include "qpsse/exact_lp.hpp"

namespace qpsse {

PerturbationScheme MiltersenScheme(const SequenceForm& sf) {
  PerturbationScheme scheme;
  scheme.id = "miltersen";
  for (PlayerId p : kStrategicPlayers) {
    auto& xi = scheme.xi[static_cast<int>(p)];
    for (const Sequence& s : sf.seqs(p).seqs) xi.push_back(EpsPolynomial::Monomial(1, s.length));
  }
  return scheme;
}

PerturbationScheme ParseScheme(const SequenceForm& sf, std::string_view text,
                               std::string id) {
  PerturbationScheme scheme = MiltersenScheme(sf);
  scheme.id = std::move(id);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string player, seq;
    if (!(fields >> player)) continue;
    const std::string where = "scheme line " + std::to_string(line_no) + ": ";
    auto p = ParsePlayer(player);
    if (!p || *p == PlayerId::kChance) throw ParseError(where + "bad player '" + player + "'");
    if (!(fields >> seq)) throw ParseError(where + "missing sequence");
    std::string poly;
    std::getline(fields, poly);
    if (poly.find_first_not_of(" \t") == std::string::npos) {
      throw ParseError(where + "missing polynomial");
    }
    const int s = sf.FindSequence(*p, seq);
    if (s == 0) throw ParseError(where + "the empty sequence is fixed at 1");
    scheme.xi[static_cast<int>(*p)][s] = EpsPolynomial::Parse(poly);
  }
  return scheme;
}

PerturbationScheme LoadSchemeFile(const SequenceForm& sf, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scheme file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScheme(sf, buffer.str(), path);
}

std::vector<Rational> DefaultProbeEps() {
  return {Rational(1), Rational(1, 2), Rational(1, 10), Rational(1, 100),
          Rational(1, 1000), Rational(1, 10000)};
}

std::optional<SchemeViolation> ValidateScheme(const SequenceForm& sf,
                                              const PerturbationScheme& scheme,
                                              const std::vector<Rational>& probe_eps) {
  for (PlayerId p : kStrategicPlayers) {
    const auto& xi = scheme.xi[static_cast<int>(p)];
    if (static_cast<int>(xi.size()) != sf.seqs(p).size()) {
      return SchemeViolation{p, -1, -1, SchemeCondition::kPolynomial,
                             "scheme does not cover every " +
                                 std::string(PlayerName(p)) + " sequence"};
    }
    if (!(xi[0] == EpsPolynomial::Constant(1))) {
      return SchemeViolation{p, 0, -1, SchemeCondition::kPolynomial,
                             "empty sequence must map to the constant 1"};
    }
  }
  for (PlayerId p : kStrategicPlayers) {
    const auto& xi = scheme.xi[static_cast<int>(p)];
    for (int s = 1; s < sf.seqs(p).size(); ++s) {
      const std::string name =
          std::string(PlayerName(p)) + " sequence " + sf.SequenceName(p, s);
      auto fail = [&](const std::string& why) {
        return SchemeViolation{p, s, -1, SchemeCondition::kVanishing,
                               "vanishing condition fails at " + name + ": " + why};
      };
      if (xi[s].IsZero()) return fail("zero polynomial");
      if (xi[s].Coefficient(0) != 0) return fail("nonzero constant term");
      if (xi[s].LowestCoefficient() <= 0) return fail("negative near zero");
      for (const Rational& e : probe_eps) {
        if (xi[s].Evaluate(e) <= 0) return fail("non-positive at e=" + ToString(e));
      }
    }
  }
  for (PlayerId p : kStrategicPlayers) {
    const auto& xi = scheme.xi[static_cast<int>(p)];
    const PlayerSequences& ps = sf.seqs(p);
    for (int s = 1; s < ps.size(); ++s) {
      const int parent = ps.seqs[s].parent;
      if (!RatioLimitAtZeroIsZero(xi[s], xi[parent])) {
        return SchemeViolation{
            p, s, parent, SchemeCondition::kRatio,
            "ratio condition fails at (" + sf.SequenceName(p, s) + ", " +
                sf.SequenceName(p, parent) + "): ratio does not vanish"};
      }
    }
  }
  return std::nullopt;
}

namespace {

ExactLP FeasibilityLp(const PerturbedInstance& inst, PlayerId p) {
  const int pi = static_cast<int>(p);
  const SparseMatrix& F = inst.ctx->m.F[pi];
  ExactLP lp;
  lp.sense = Sense::kMin;
  for (const Rational& lb : inst.xi[pi]) lp.AddVariable(0, lb);
  std::vector<std::vector<std::pair<int, Rational>>> rows(F.rows);
  for (const auto& [rc, v] : F.entries) rows[rc.first].emplace_back(rc.second, v);
  for (int r = 0; r < F.rows; ++r) {
    lp.AddRow(std::move(rows[r]), RowType::kEq, inst.ctx->m.f[pi][r]);
  }
  return lp;
}

void CheckFeasible(const PerturbedInstance& inst) {
  for (PlayerId p : kStrategicPlayers) {
    if (Solve(FeasibilityLp(inst, p)).status == LpStatus::kOptimal) continue;
    const RationalVector budget = InfosetBudgets(inst, p);
    int culprit = -1;
    for (size_t k = 0; k < budget.size() && culprit < 0; ++k) {
      if (budget[k] < 0) culprit = static_cast<int>(k);
    }
    const GameTree& g = inst.ctx->game;
    std::string what = std::string(PlayerName(p)) + " strategy set is empty at e=" +
                       ToString(inst.eps);
    if (culprit >= 0) {
      what += ": infoset '" + g.infoset(g.PlayerInfosets(p)[culprit]).label +
              "' budget " + ToString(budget[culprit]) + " < 0";
    }
    throw InfeasibleInstance(p, culprit, what);
  }
}

}  // namespace

PerturbedInstance InstantiateUnchecked(const GameContext& ctx,
                                       const PerturbationScheme& scheme,
                                       const Rational& eps) {
  if (eps <= 0 || eps > 1) throw std::invalid_argument("e must lie in (0,1]");
  PerturbedInstance inst;
  inst.ctx = &ctx;
  inst.eps = eps;
  inst.scheme_id = scheme.id;
  for (int pi = 0; pi < 2; ++pi) {
    if (static_cast<int>(scheme.xi[pi].size()) != ctx.sf.seqs(PlayerId(pi)).size()) {
      throw std::invalid_argument("scheme size does not match the game");
    }
    for (const EpsPolynomial& poly : scheme.xi[pi]) inst.xi[pi].push_back(poly.Evaluate(eps));
  }
  CheckFeasible(inst);
  return inst;
}

PerturbedInstance Instantiate(const GameContext& ctx, const PerturbationScheme& scheme,
                              const Rational& eps) {
  if (auto v = ValidateScheme(ctx.sf, scheme)) throw SchemeError(*v);
  return InstantiateUnchecked(ctx, scheme, eps);
}

PerturbedInstance UnperturbedInstance(const GameContext& ctx) {
  PerturbedInstance inst;
  inst.ctx = &ctx;
  inst.unperturbed = true;
  inst.scheme_id = "none";
  for (int pi = 0; pi < 2; ++pi) {
    inst.xi[pi].assign(ctx.sf.seqs(PlayerId(pi)).size(), 0);
    inst.xi[pi][0] = 1;
  }
  return inst;
}

RationalVector InfosetBudgets(const PerturbedInstance& inst, PlayerId p) {
  const PlayerSequences& ps = inst.ctx->sf.seqs(p);
  const RationalVector& xi = inst.Xi(p);
  RationalVector budget;
  for (size_t k = 0; k < ps.infoset_seq.size(); ++k) {
    Rational b = xi[ps.infoset_seq[k]];
    for (int s : ps.extension[k]) b -= xi[s];
    budget.push_back(b);
  }
  return budget;
}

RationalVector MinimalMass(const PerturbedInstance& inst, PlayerId p) {
  const PlayerSequences& ps = inst.ctx->sf.seqs(p);
  const RationalVector& xi = inst.Xi(p);
  RationalVector m = xi;
  // Children follow parents in sequence order, so a reverse sweep is bottom-up.
  for (int s = ps.size() - 1; s >= 0; --s) {
    for (int k : ps.child_infosets[s]) {
      Rational need = 0;
      for (int c : ps.extension[k]) need += m[c];
      if (need > m[s]) m[s] = need;
    }
  }
  m[0] = 1;
  return m;
}

RationalVector Eta(const PerturbedInstance& inst) {
  const PlayerSequences& ps = inst.ctx->sf.seqs(PlayerId::kFollower);
  const RationalVector m = MinimalMass(inst, PlayerId::kFollower);
  RationalVector eta(ps.size(), 0);
  eta[0] = 1;
  for (int s = 1; s < ps.size(); ++s) {
    const Sequence& seq = ps.seqs[s];
    Rational v = eta[seq.parent];
    for (int sib : ps.extension[seq.infoset]) {
      if (sib != s) v -= m[sib];
    }
    eta[s] = v;
  }
  return eta;
}

Rational EtaByLp(const PerturbedInstance& inst, int follower_seq) {
  ExactLP lp = FeasibilityLp(inst, PlayerId::kFollower);
  lp.sense = Sense::kMax;
  lp.c[follower_seq] = 1;
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("eta LP not optimal");
  return sol.objective;
}

RationalVector ResidualRhs(const PerturbedInstance& inst, PlayerId p) {
  const int pi = static_cast<int>(p);
  RationalVector rhs = inst.ctx->m.f[pi];
  const RationalVector fx = inst.ctx->m.F[pi].Multiply(inst.xi[pi]);
  for (size_t r = 0; r < rhs.size(); ++r) rhs[r] -= fx[r];
  return rhs;
}

Residual ComputeResidual(const PerturbedInstance& inst, PlayerId p,
                         const RationalVector& r) {
  Residual res{r, r};
  const RationalVector& xi = inst.Xi(p);
  for (size_t s = 0; s < r.size(); ++s) res.residual[s] -= xi[s];
  return res;
}

bool IsFeasiblePlan(const PerturbedInstance& inst, PlayerId p, const RationalVector& r) {
  if (!IsRealizationPlan(inst.ctx->sf, RealizationPlan{p, r})) return false;
  const RationalVector& xi = inst.Xi(p);
  for (size_t s = 0; s < r.size(); ++s) {
    if (r[s] < xi[s]) return false;
  }
  return true;
}

}  // namespace qpsse
