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

// Two-player (leader/follower, plus chance) extensive-form games with
// imperfect information.

#ifndef QPSSE_GAME_HPP_
#define QPSSE_GAME_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpsse/numeric.hpp"

namespace qpsse {

enum class PlayerId { kLeader = 0, kFollower = 1, kChance = 2 };

inline constexpr std::array<PlayerId, 2> kStrategicPlayers = {
    PlayerId::kLeader, PlayerId::kFollower};

std::string_view PlayerName(PlayerId p);
std::optional<PlayerId> ParsePlayer(std::string_view name);

enum class GameErrorCode {
  kUndeclaredNode,
  kDuplicateNode,
  kNotATree,
  kCycle,
  kUnreachableNode,
  kEmptyActions,
  kArityMismatch,
  kHeterogeneousActions,
  kInfosetOwnerMismatch,
  kChanceProbabilities,
};

class GameError : public std::runtime_error {
 public:
  GameError(GameErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GameErrorCode code() const { return code_; }

 private:
  GameErrorCode code_;
};

// One entry of a game description. Ids must be exactly 0..N-1; they become
// the node ids of the built tree.
struct NodeSpec {
  int id = -1;
  bool terminal = false;
  PlayerId owner = PlayerId::kLeader;   // decision nodes
  std::string infoset;                  // leader/follower nodes
  std::vector<std::string> actions;
  std::vector<int> children;            // parallel to actions
  RationalVector chance_probs;          // chance nodes, parallel to actions
  Rational leader_payoff = 0;           // terminal nodes
  Rational follower_payoff = 0;
};

struct GameDescription {
  std::vector<NodeSpec> nodes;
};

struct Node {
  int id = -1;
  bool terminal = false;
  PlayerId owner = PlayerId::kLeader;
  int infoset = -1;  // global infoset id; -1 for chance and terminal nodes
  std::vector<std::string> actions;
  std::vector<int> children;
  RationalVector chance_probs;
  int parent = -1;
  int parent_action = -1;
  int depth = 0;
  Rational chance_reach = 1;  // product of chance probabilities on the root path
  Rational leader_payoff = 0;
  Rational follower_payoff = 0;
};

struct Infoset {
  PlayerId player = PlayerId::kLeader;
  std::string label;
  std::vector<std::string> actions;
  std::vector<int> nodes;  // in DFS order
  int local_index = -1;    // position among the player's infosets
};

// Immutable, validated game tree. Infosets of each player are numbered in
// order of first visit by a depth-first walk that follows action order.
class GameTree {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_.at(id); }
  int root() const { return root_; }
  const std::vector<Infoset>& infosets() const { return infosets_; }
  const Infoset& infoset(int global_id) const { return infosets_.at(global_id); }
  // Global infoset ids of one player, indexed by local index.
  const std::vector<int>& PlayerInfosets(PlayerId p) const {
    return player_infosets_.at(static_cast<int>(p));
  }
  int NumInfosets(PlayerId p) const {
    return static_cast<int>(PlayerInfosets(p).size());
  }
  const std::vector<int>& dfs_order() const { return dfs_order_; }
  bool HasChance() const { return has_chance_; }
  int NumTerminals() const;

 private:
  friend GameTree BuildGame(const GameDescription& description);
  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_;
  std::array<std::vector<int>, 2> player_infosets_;
  std::vector<int> dfs_order_;
  int root_ = -1;
  bool has_chance_ = false;
};

// Validates a description and builds the tree. Throws GameError.
GameTree BuildGame(const GameDescription& description);

// A player's own moves on a root path, as (global infoset, action) pairs.
using OwnHistory = std::vector<std::pair<int, int>>;
OwnHistory OwnHistoryOf(const GameTree& g, int node, PlayerId p);

struct PerfectRecallReport {
  bool ok = true;
  int infoset = -1;  // first offending global infoset
  int node_a = -1, node_b = -1;
  OwnHistory history_a, history_b;
};

PerfectRecallReport ValidatePerfectRecall(const GameTree& g);

// Per-infoset action distribution for one player, indexed by local infoset.
struct BehavioralStrategy {
  PlayerId player = PlayerId::kLeader;
  std::vector<RationalVector> probs;

  bool IsValid() const;           // entries >= 0, each infoset sums to 1
  bool IsCompletelyMixed() const; // every entry > 0
};

BehavioralStrategy UniformStrategy(const GameTree& g, PlayerId p);

// Expected (leader, follower) payoff by walking the tree.
std::pair<Rational, Rational> ExpectedUtility(const GameTree& g,
                                              const BehavioralStrategy& leader,
                                              const BehavioralStrategy& follower);

// Probability of reaching each node under a behavioral profile (chance
// included).
RationalVector ReachProbabilities(const GameTree& g,
                                  const BehavioralStrategy& leader,
                                  const BehavioralStrategy& follower);

}  // namespace qpsse

#endif  // QPSSE_GAME_HPP_
