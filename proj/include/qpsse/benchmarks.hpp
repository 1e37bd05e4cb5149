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


// Game generators: the search game, Goofspiel, small shaped examples and
// random perfect-recall games.

#ifndef QPSSE_BENCHMARKS_HPP_
#define QPSSE_BENCHMARKS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qpsse/game.hpp"

namespace qpsse {

// Directed follower moves and the two patrol zones. Patrols move along the
// (undirected) intra-zone edges only; the follower never uses them.
struct SearchGraph {
  std::vector<std::string> names;
  std::vector<std::vector<int>> follower_moves;  // by node
  std::vector<std::vector<int>> zones;           // patrol zone members
  std::vector<int> patrol_start;                 // per zone
  int start = 0;
  std::vector<std::pair<int, Rational>> goals;   // node, follower payoff
};

struct SearchGameConfig {
  int horizon = 2;
  Rational goal_top = 5;
  Rational goal_bottom = 10;
  Rational capture_leader = 1;
  Rational capture_follower = 0;
  Rational goal_leader = 0;
  Rational timeout_leader = 0;
  Rational timeout_follower = -1000000;
};

SearchGraph DefaultSearchGraph(const SearchGameConfig& cfg);
GameTree GenSearchGame(const SearchGameConfig& cfg);

struct GoofspielConfig {
  int cards = 3;
};

GameTree GenGoofspiel(const GoofspielConfig& cfg);
GameTree GenGoofspiel3();

using PayoffPair = std::pair<Rational, Rational>;  // (leader, follower)

// Leader root {a1, a2}; a2 leads to a second leader node {a3, a4}. Payoffs
// for the terminals after a1, a2a3, a2a4.
GameTree GenTwoStageLeaderGame(const std::vector<PayoffPair>& payoffs);

// Leader root {a1, a2}; a1 leads to a leader node {a3, a4}, a2 to a follower
// node {af1, af2}. Payoffs for a1a3, a1a4, a2af1, a2af2.
GameTree GenMixedRootGame(const std::vector<PayoffPair>& payoffs);

struct RandomGameConfig {
  int max_nodes = 40;
  int max_actions = 3;
  int max_follower_infosets = 6;
  int max_depth = 6;
  int payoff_range = 5;           // integer payoffs in [-range, range]
  int payoff_denominator = 1;     // payoffs divided by 1..denominator
  double join_probability = 0.5;  // chance a node joins an existing infoset
};

// Perfect recall, no chance nodes, deterministic for a given seed.
GameTree GenRandomGame(const RandomGameConfig& cfg, std::uint64_t seed);

}  // namespace qpsse

#endif  // QPSSE_BENCHMARKS_HPP_
