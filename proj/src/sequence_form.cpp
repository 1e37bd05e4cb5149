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


#include "qpsse/sequence_form.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qpsse {

Rational SparseMatrix::At(int r, int c) const {
  auto it = entries.find({r, c});
  return it == entries.end() ? Rational(0) : it->second;
}

void SparseMatrix::Add(int r, int c, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = entries.try_emplace({r, c}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries.erase(it);
  }
}

RationalVector SparseMatrix::Multiply(const RationalVector& x) const {
  RationalVector y(rows, 0);
  for (const auto& [rc, v] : entries) y[rc.first] += v * x[rc.second];
  return y;
}

RationalVector SparseMatrix::TransposeMultiply(const RationalVector& y) const {
  RationalVector x(cols, 0);
  for (const auto& [rc, v] : entries) x[rc.second] += v * y[rc.first];
  return x;
}

bool PlayerSequences::IsPrefix(int prefix, int s) const {
  const int len = seqs[prefix].length;
  while (s >= 0 && seqs[s].length > len) s = seqs[s].parent;
  return s == prefix;
}

SequenceForm::SequenceForm(const GameTree& g) : game_(&g) {
  const int n = static_cast<int>(g.nodes().size());
  for (PlayerId p : kStrategicPlayers) {
    const int pi = Index(p);
    PlayerSequences& ps = seqs_[pi];
    const int num_infosets = g.NumInfosets(p);
    ps.seqs.push_back(Sequence{});
    ps.child_infosets.emplace_back();
    ps.infoset_seq.assign(num_infosets, -1);
    ps.extension.assign(num_infosets, {});
    node_seq_[pi].assign(n, -1);
    for (int id : g.dfs_order()) {
      const Node& node = g.node(id);
      int s = 0;
      if (node.parent >= 0) {
        const Node& parent = g.node(node.parent);
        s = node_seq_[pi][node.parent];
        if (parent.owner == p) {
          s = ps.extension[g.infoset(parent.infoset).local_index][node.parent_action];
        }
      }
      node_seq_[pi][id] = s;
      if (node.terminal || node.owner != p) continue;
      const int local = g.infoset(node.infoset).local_index;
      if (ps.infoset_seq[local] < 0) {
        ps.infoset_seq[local] = s;
        ps.child_infosets[s].push_back(local);
        for (size_t a = 0; a < node.actions.size(); ++a) {
          Sequence seq;
          seq.infoset = local;
          seq.action = static_cast<int>(a);
          seq.parent = s;
          seq.length = ps.seqs[s].length + 1;
          ps.extension[local].push_back(ps.size());
          ps.seqs.push_back(seq);
          ps.child_infosets.emplace_back();
        }
      } else if (ps.infoset_seq[local] != s) {
        throw std::invalid_argument("imperfect recall at infoset '" +
                                    g.infoset(node.infoset).label + "'");
      }
    }
  }
}

std::string SequenceForm::SequenceName(PlayerId p, int s) const {
  const PlayerSequences& ps = seqs(p);
  if (s == 0) return "-";
  std::vector<std::string> parts;
  for (; s > 0; s = ps.seqs[s].parent) {
    const Infoset& info =
        game_->infoset(game_->PlayerInfosets(p)[ps.seqs[s].infoset]);
    parts.push_back(info.label + ":" + info.actions[ps.seqs[s].action]);
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!out.empty()) out += ",";
    out += *it;
  }
  return out;
}

int SequenceForm::FindSequence(PlayerId p, const std::string& name) const {
  if (name == "-" || name.empty()) return 0;
  const PlayerSequences& ps = seqs(p);
  if (name.find(',') == std::string::npos) {
    // A single token names the last action anywhere in the tree.
    const auto colon = name.rfind(':');
    const std::string label = colon == std::string::npos ? "" : name.substr(0, colon);
    const std::string action = colon == std::string::npos ? name : name.substr(colon + 1);
    int found = -1;
    for (int s = 1; s < ps.size(); ++s) {
      const Infoset& info = game_->infoset(game_->PlayerInfosets(p)[ps.seqs[s].infoset]);
      if (info.actions[ps.seqs[s].action] != action) continue;
      if (!label.empty() && info.label != label) continue;
      if (found >= 0) throw ParseError("ambiguous sequence '" + name + "'");
      found = s;
    }
    if (found < 0) throw ParseError("unknown sequence '" + name + "'");
    return found;
  }
  int cur = 0;
  std::stringstream tokens(name);
  for (std::string token; std::getline(tokens, token, ',');) {
    std::string label, action = token;
    if (auto colon = token.rfind(':'); colon != std::string::npos) {
      label = token.substr(0, colon);
      action = token.substr(colon + 1);
    }
    int next = -1;
    for (int local : ps.child_infosets[cur]) {
      const Infoset& info = game_->infoset(game_->PlayerInfosets(p)[local]);
      if (!label.empty() && info.label != label) continue;
      for (size_t a = 0; a < info.actions.size(); ++a) {
        if (info.actions[a] != action) continue;
        if (next >= 0) throw ParseError("ambiguous sequence '" + name + "'");
        next = ps.extension[local][a];
      }
    }
    if (next < 0) throw ParseError("unknown sequence '" + name + "'");
    cur = next;
  }
  return cur;
}

SeqFormMatrices BuildMatrices(const SequenceForm& sf) {
  SeqFormMatrices m;
  const GameTree& g = sf.game();
  for (PlayerId p : kStrategicPlayers) {
    const int pi = static_cast<int>(p);
    const PlayerSequences& ps = sf.seqs(p);
    const int num_infosets = static_cast<int>(ps.infoset_seq.size());
    m.F[pi].rows = num_infosets + 1;
    m.F[pi].cols = ps.size();
    m.F[pi].Add(0, 0, 1);
    for (int k = 0; k < num_infosets; ++k) {
      m.F[pi].Add(k + 1, ps.infoset_seq[k], -1);
      for (int s : ps.extension[k]) m.F[pi].Add(k + 1, s, 1);
    }
    m.f[pi].assign(num_infosets + 1, 0);
    m.f[pi][0] = 1;
  }
  const int nl = sf.seqs(PlayerId::kLeader).size();
  const int nf = sf.seqs(PlayerId::kFollower).size();
  for (int i = 0; i < 2; ++i) {
    m.U[i].rows = nl;
    m.U[i].cols = nf;
  }
  for (const Node& node : g.nodes()) {
    if (!node.terminal) continue;
    const int sl = sf.NodeSequence(PlayerId::kLeader, node.id);
    const int sfo = sf.NodeSequence(PlayerId::kFollower, node.id);
    m.U[0].Add(sl, sfo, node.leader_payoff * node.chance_reach);
    m.U[1].Add(sl, sfo, node.follower_payoff * node.chance_reach);
  }
  return m;
}

bool IsRealizationPlan(const SequenceForm& sf, const RealizationPlan& plan) {
  const PlayerSequences& ps = sf.seqs(plan.player);
  if (static_cast<int>(plan.r.size()) != ps.size()) return false;
  for (const Rational& v : plan.r) {
    if (v < 0) return false;
  }
  if (plan.r[0] != 1) return false;
  for (size_t k = 0; k < ps.infoset_seq.size(); ++k) {
    Rational sum = 0;
    for (int s : ps.extension[k]) sum += plan.r[s];
    if (sum != plan.r[ps.infoset_seq[k]]) return false;
  }
  return true;
}

RealizationPlan BehavioralToRealization(const SequenceForm& sf,
                                        const BehavioralStrategy& pi) {
  const PlayerSequences& ps = sf.seqs(pi.player);
  RealizationPlan plan{pi.player, RationalVector(ps.size(), 0)};
  plan.r[0] = 1;
  for (int s = 1; s < ps.size(); ++s) {
    const Sequence& seq = ps.seqs[s];
    plan.r[s] = plan.r[seq.parent] * pi.probs[seq.infoset][seq.action];
  }
  return plan;
}

BehavioralStrategy RealizationToBehavioral(const SequenceForm& sf,
                                           const RealizationPlan& plan) {
  const PlayerSequences& ps = sf.seqs(plan.player);
  BehavioralStrategy pi;
  pi.player = plan.player;
  for (size_t k = 0; k < ps.infoset_seq.size(); ++k) {
    const Rational& mass = plan.r[ps.infoset_seq[k]];
    const auto& ext = ps.extension[k];
    RationalVector dist;
    for (int s : ext) {
      dist.push_back(mass > 0 ? Rational(plan.r[s] / mass)
                              : Rational(1, static_cast<unsigned long>(ext.size())));
    }
    pi.probs.push_back(std::move(dist));
  }
  return pi;
}

std::pair<Rational, Rational> SequenceFormUtility(const SeqFormMatrices& m,
                                                  const RationalVector& r_leader,
                                                  const RationalVector& r_follower) {
  Rational ul = 0, uf = 0;
  for (const auto& [rc, v] : m.U[0].entries) {
    ul += r_leader[rc.first] * v * r_follower[rc.second];
  }
  for (const auto& [rc, v] : m.U[1].entries) {
    uf += r_leader[rc.first] * v * r_follower[rc.second];
  }
  return {ul, uf};
}

namespace {

std::vector<int> SortedUnion(const std::vector<std::vector<int>>& rel,
                             const std::vector<int>& keys) {
  std::set<int> out;
  for (int k : keys) out.insert(rel[k].begin(), rel[k].end());
  return {out.begin(), out.end()};
}

}  // namespace

RelevanceMap ComputeRelevance(const SequenceForm& sf) {
  const GameTree& g = sf.game();
  const PlayerSequences& L = sf.seqs(PlayerId::kLeader);
  const PlayerSequences& Fo = sf.seqs(PlayerId::kFollower);
  RelevanceMap rm;
  rm.relevant.assign(L.size(), std::vector<char>(Fo.size(), 0));
  for (int s = 0; s < L.size(); ++s) rm.relevant[s][0] = 1;
  for (int s = 0; s < Fo.size(); ++s) rm.relevant[0][s] = 1;

  // Any (leader infoset, follower infoset) pair with one node an ancestor of
  // the other makes all their extension pairs relevant.
  std::set<std::pair<int, int>> infoset_pairs;
  for (const Node& node : g.nodes()) {
    if (node.terminal || node.owner == PlayerId::kChance) continue;
    const int mine = g.infoset(node.infoset).local_index;
    for (int a = node.parent; a >= 0; a = g.node(a).parent) {
      const Node& anc = g.node(a);
      if (anc.owner == PlayerId::kChance || anc.owner == node.owner) continue;
      const int theirs = g.infoset(anc.infoset).local_index;
      if (node.owner == PlayerId::kLeader) {
        infoset_pairs.emplace(mine, theirs);
      } else {
        infoset_pairs.emplace(theirs, mine);
      }
    }
  }
  for (const auto& [il, jf] : infoset_pairs) {
    for (int sl : L.extension[il]) {
      for (int sfo : Fo.extension[jf]) rm.relevant[sl][sfo] = 1;
    }
  }

  rm.rel_leader.assign(L.size(), {});
  rm.rel_follower.assign(Fo.size(), {});
  for (int sl = 0; sl < L.size(); ++sl) {
    for (int sfo = 0; sfo < Fo.size(); ++sfo) {
      if (!rm.relevant[sl][sfo]) continue;
      rm.rel_leader[sl].push_back(sfo);
      rm.rel_follower[sfo].push_back(sl);
    }
  }
  for (const auto& ext : L.extension) {
    rm.rel_infoset_leader.push_back(SortedUnion(rm.rel_leader, ext));
  }
  for (const auto& ext : Fo.extension) {
    rm.rel_infoset_follower.push_back(SortedUnion(rm.rel_follower, ext));
  }
  const int nf_info = static_cast<int>(Fo.infoset_seq.size());
  rm.prec.assign(nf_info, {});
  for (int i = 0; i < nf_info; ++i) {
    for (int j = 0; j < nf_info; ++j) {
      if (!Fo.IsPrefix(Fo.infoset_seq[j], Fo.infoset_seq[i])) continue;
      rm.prec[i].insert(rm.prec[i].end(), Fo.extension[j].begin(),
                        Fo.extension[j].end());
    }
    std::sort(rm.prec[i].begin(), rm.prec[i].end());
  }
  return rm;
}

GameContext::GameContext(GameTree g)
    : game(std::move(g)), sf(game), m(BuildMatrices(sf)), rel(ComputeRelevance(sf)) {}

namespace {

void DumpDense(std::ostream& out, const std::string& title, const SparseMatrix& a) {
  out << title << " " << a.rows << "x" << a.cols << "\n";
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) out << (c ? " " : "") << ToString(a.At(r, c));
    out << "\n";
  }
}

}  // namespace

std::string DumpMatrices(const SequenceForm& sf, const SeqFormMatrices& m) {
  std::ostringstream out;
  for (PlayerId p : kStrategicPlayers) {
    const int pi = static_cast<int>(p);
    out << "sequences " << PlayerName(p) << "\n";
    for (int s = 0; s < sf.seqs(p).size(); ++s) {
      out << s << " " << sf.SequenceName(p, s) << "\n";
    }
    DumpDense(out, "F " + std::string(PlayerName(p)), m.F[pi]);
    out << "f " << PlayerName(p);
    for (const Rational& v : m.f[pi]) out << " " << ToString(v);
    out << "\n";
  }
  DumpDense(out, "U leader", m.U[0]);
  DumpDense(out, "U follower", m.U[1]);
  return out.str();
}

}  // namespace qpsse
