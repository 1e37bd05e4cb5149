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

#include "qpsse/game.hpp"

#include <map>
#include <string>

namespace qpsse {

std::string_view PlayerName(PlayerId p) {
  switch (p) {
    case PlayerId::kLeader:
      return "leader";
    case PlayerId::kFollower:
      return "follower";
    case PlayerId::kChance:
      return "chance";
  }
  return "?";
}

std::optional<PlayerId> ParsePlayer(std::string_view name) {
  if (name == "leader") return PlayerId::kLeader;
  if (name == "follower") return PlayerId::kFollower;
  if (name == "chance") return PlayerId::kChance;
  return std::nullopt;
}

int GameTree::NumTerminals() const {
  int n = 0;
  for (const Node& node : nodes_) n += node.terminal ? 1 : 0;
  return n;
}

GameTree BuildGame(const GameDescription& description) {
  const int n = static_cast<int>(description.nodes.size());
  GameTree g;
  g.nodes_.resize(n);
  std::vector<bool> declared(n, false);
  for (const NodeSpec& spec : description.nodes) {
    if (spec.id < 0 || spec.id >= n) {
      throw GameError(GameErrorCode::kUndeclaredNode,
                      "node id " + std::to_string(spec.id) +
                          " outside dense range 0.." + std::to_string(n - 1));
    }
    if (declared[spec.id]) {
      throw GameError(GameErrorCode::kDuplicateNode,
                      "node " + std::to_string(spec.id) + " declared twice");
    }
    declared[spec.id] = true;
    Node& node = g.nodes_[spec.id];
    node.id = spec.id;
    node.terminal = spec.terminal;
    if (spec.terminal) {
      node.leader_payoff = spec.leader_payoff;
      node.follower_payoff = spec.follower_payoff;
      continue;
    }
    node.owner = spec.owner;
    node.actions = spec.actions;
    node.children = spec.children;
    if (node.actions.empty()) {
      throw GameError(GameErrorCode::kEmptyActions,
                      "decision node " + std::to_string(spec.id) + " has no actions");
    }
    if (node.children.size() != node.actions.size()) {
      throw GameError(GameErrorCode::kArityMismatch,
                      "node " + std::to_string(spec.id) + ": actions/children arity");
    }
    if (spec.owner == PlayerId::kChance) {
      if (spec.chance_probs.size() != node.actions.size()) {
        throw GameError(GameErrorCode::kArityMismatch,
                        "chance node " + std::to_string(spec.id) +
                            ": probabilities/actions arity");
      }
      Rational sum = 0;
      for (const Rational& p : spec.chance_probs) {
        if (p < 0 || p > 1) {
          throw GameError(GameErrorCode::kChanceProbabilities,
                          "chance node " + std::to_string(spec.id) +
                              ": probability outside [0,1]");
        }
        sum += p;
      }
      if (sum != 1) {
        throw GameError(GameErrorCode::kChanceProbabilities,
                        "chance node " + std::to_string(spec.id) +
                            ": probabilities sum to " + ToString(sum));
      }
      node.chance_probs = spec.chance_probs;
      g.has_chance_ = true;
    }
  }

  std::vector<const NodeSpec*> spec_of(n, nullptr);
  for (const NodeSpec& spec : description.nodes) spec_of[spec.id] = &spec;

  std::vector<int> indegree(n, 0);
  for (const Node& node : g.nodes_) {
    for (size_t a = 0; a < node.children.size(); ++a) {
      const int c = node.children[a];
      if (c < 0 || c >= n) {
        throw GameError(GameErrorCode::kUndeclaredNode,
                        "node " + std::to_string(node.id) +
                            " references undeclared child " + std::to_string(c));
      }
      if (++indegree[c] > 1) {
        throw GameError(GameErrorCode::kNotATree,
                        "node " + std::to_string(c) + " has several parents");
      }
      g.nodes_[c].parent = node.id;
      g.nodes_[c].parent_action = static_cast<int>(a);
    }
  }
  for (int i = 0; i < n && g.root_ < 0; ++i) {
    if (indegree[i] == 0) g.root_ = i;
  }
  if (g.root_ < 0) throw GameError(GameErrorCode::kCycle, "no root: cycle detected");

  // Iterative DFS in action order; visited count catches cycles (every node
  // off the root's component has a parent, so it lies on a cycle) and extra
  // parentless nodes.
  std::vector<bool> visited(n, false);
  std::vector<int> stack = {g.root_};
  std::map<std::pair<int, std::string>, int> infoset_ids;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (visited[id]) throw GameError(GameErrorCode::kCycle, "cycle detected");
    visited[id] = true;
    g.dfs_order_.push_back(id);
    Node& node = g.nodes_[id];
    if (node.parent >= 0) {
      const Node& parent = g.nodes_[node.parent];
      node.depth = parent.depth + 1;
      node.chance_reach = parent.chance_reach;
      if (parent.owner == PlayerId::kChance && !parent.terminal) {
        node.chance_reach *= parent.chance_probs[node.parent_action];
      }
    }
    if (!node.terminal && node.owner != PlayerId::kChance) {
      const NodeSpec* spec = spec_of[id];
      const int owner = static_cast<int>(node.owner);
      auto key = std::make_pair(owner, spec->infoset);
      auto it = infoset_ids.find(key);
      if (it == infoset_ids.end()) {
        // A label used by the other strategic player is an owner clash.
        auto clash = infoset_ids.find(std::make_pair(1 - owner, spec->infoset));
        if (clash != infoset_ids.end()) {
          throw GameError(GameErrorCode::kInfosetOwnerMismatch,
                          "infoset '" + spec->infoset + "' has several owners");
        }
        Infoset info;
        info.player = node.owner;
        info.label = spec->infoset;
        info.actions = node.actions;
        info.local_index = static_cast<int>(g.player_infosets_[owner].size());
        const int gid = static_cast<int>(g.infosets_.size());
        g.infosets_.push_back(info);
        g.player_infosets_[owner].push_back(gid);
        it = infoset_ids.emplace(key, gid).first;
      }
      Infoset& info = g.infosets_[it->second];
      if (info.actions != node.actions) {
        throw GameError(GameErrorCode::kHeterogeneousActions,
                        "heterogeneous actions in infoset '" + info.label + "'");
      }
      info.nodes.push_back(id);
      node.infoset = it->second;
    }
    for (auto c = node.children.rbegin(); c != node.children.rend(); ++c) {
      stack.push_back(*c);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!visited[i]) {
      if (indegree[i] == 0) {
        throw GameError(GameErrorCode::kUnreachableNode,
                        "node " + std::to_string(i) + " unreachable from root " +
                            std::to_string(g.root_));
      }
      throw GameError(GameErrorCode::kCycle,
                      "cycle detected through node " + std::to_string(i));
    }
  }
  return g;
}

OwnHistory OwnHistoryOf(const GameTree& g, int node, PlayerId p) {
  OwnHistory history;
  int child = node;
  for (int cur = g.node(node).parent; cur >= 0; cur = g.node(cur).parent) {
    const Node& n = g.node(cur);
    if (n.owner == p && !n.terminal) {
      history.emplace_back(n.infoset, g.node(child).parent_action);
    }
    child = cur;
  }
  return {history.rbegin(), history.rend()};
}

PerfectRecallReport ValidatePerfectRecall(const GameTree& g) {
  PerfectRecallReport report;
  for (size_t i = 0; i < g.infosets().size(); ++i) {
    const Infoset& info = g.infoset(static_cast<int>(i));
    const OwnHistory first = OwnHistoryOf(g, info.nodes.front(), info.player);
    for (size_t k = 1; k < info.nodes.size(); ++k) {
      OwnHistory other = OwnHistoryOf(g, info.nodes[k], info.player);
      if (other != first) {
        report.ok = false;
        report.infoset = static_cast<int>(i);
        report.node_a = info.nodes.front();
        report.node_b = info.nodes[k];
        report.history_a = first;
        report.history_b = std::move(other);
        return report;
      }
    }
  }
  return report;
}

bool BehavioralStrategy::IsValid() const {
  for (const RationalVector& dist : probs) {
    Rational sum = 0;
    for (const Rational& p : dist) {
      if (p < 0) return false;
      sum += p;
    }
    if (sum != 1) return false;
  }
  return true;
}

bool BehavioralStrategy::IsCompletelyMixed() const {
  for (const RationalVector& dist : probs) {
    for (const Rational& p : dist) {
      if (p <= 0) return false;
    }
  }
  return true;
}

BehavioralStrategy UniformStrategy(const GameTree& g, PlayerId p) {
  BehavioralStrategy s;
  s.player = p;
  for (int gid : g.PlayerInfosets(p)) {
    const auto k = g.infoset(gid).actions.size();
    s.probs.emplace_back(k, Rational(1, static_cast<unsigned long>(k)));
  }
  return s;
}

RationalVector ReachProbabilities(const GameTree& g,
                                  const BehavioralStrategy& leader,
                                  const BehavioralStrategy& follower) {
  RationalVector reach(g.nodes().size(), 0);
  for (int id : g.dfs_order()) {
    const Node& node = g.node(id);
    if (node.parent < 0) {
      reach[id] = 1;
      continue;
    }
    const Node& parent = g.node(node.parent);
    Rational p;
    if (parent.owner == PlayerId::kChance) {
      p = parent.chance_probs[node.parent_action];
    } else {
      const BehavioralStrategy& s =
          parent.owner == PlayerId::kLeader ? leader : follower;
      p = s.probs[g.infoset(parent.infoset).local_index][node.parent_action];
    }
    reach[id] = reach[node.parent] * p;
  }
  return reach;
}

std::pair<Rational, Rational> ExpectedUtility(const GameTree& g,
                                              const BehavioralStrategy& leader,
                                              const BehavioralStrategy& follower) {
  const RationalVector reach = ReachProbabilities(g, leader, follower);
  Rational ul = 0, uf = 0;
  for (const Node& node : g.nodes()) {
    if (!node.terminal) continue;
    ul += reach[node.id] * node.leader_payoff;
    uf += reach[node.id] * node.follower_payoff;
  }
  return {ul, uf};
}

}  // namespace qpsse
