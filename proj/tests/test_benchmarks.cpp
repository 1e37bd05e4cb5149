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


#include <doctest.h>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "qpsse/benchmarks.hpp"
#include "qpsse/game_io.hpp"
#include "qpsse/sequence_form.hpp"

using namespace qpsse;

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Follows actions by name from the root and returns the node reached.
int Walk(const GameTree& g, const std::vector<std::string>& actions) {
  int n = g.root();
  for (const std::string& a : actions) {
    const Node& node = g.node(n);
    const auto it = std::find(node.actions.begin(), node.actions.end(), a);
    REQUIRE(it != node.actions.end());
    n = node.children[it - node.actions.begin()];
  }
  return n;
}

// Node count of the search game from a plain state-space recursion.
long CountSearchNodes(const SearchGraph& graph, int horizon) {
  auto flip = [&](int zone, int pos) {
    return graph.zones[zone][0] == pos ? graph.zones[zone][1] : graph.zones[zone][0];
  };
  auto is_goal = [&](int v) {
    for (const auto& [n, val] : graph.goals) {
      if (n == v) return true;
    }
    return false;
  };
  std::function<long(int, int, int, int)> count = [&](int t, int p1, int p2, int pos) {
    long total = 1;
    for (int m1 = 0; m1 < 2; ++m1) {
      for (int m2 = 0; m2 < 2; ++m2) {
        const int q1 = m1 ? flip(0, p1) : p1;
        const int q2 = m2 ? flip(1, p2) : p2;
        ++total;
        std::vector<int> dest = graph.follower_moves[pos];
        dest.push_back(pos);
        for (int d : dest) {
          const bool stop = d == q1 || d == q2 || is_goal(d) || t + 1 == horizon;
          total += stop ? 1 : count(t + 1, q1, q2, d);
        }
      }
    }
    return total;
  };
  return count(0, graph.patrol_start[0], graph.patrol_start[1], graph.start);
}

}  // namespace

TEST_CASE("Goofspiel-3 size and scoring") {
  const GameTree g = GenGoofspiel3();
  CHECK(g.nodes().size() == 67);
  CHECK(g.NumTerminals() == 36);
  CHECK(ValidatePerfectRecall(g).ok);
  const SequenceForm sf(g);
  CHECK(sf.seqs(PlayerId::kLeader).size() == 22);
  CHECK(sf.seqs(PlayerId::kFollower).size() == 22);
  // Leader plays 3,2,1 and the follower 1,2,3 against prizes 1,2,3.
  const Node& t = g.node(Walk(g, {"c3", "c1", "c2", "c2"}));
  REQUIRE(t.terminal);
  CHECK(t.leader_payoff == 1);
  CHECK(t.follower_payoff == 3);
  const Node& same = g.node(Walk(g, {"c1", "c1", "c2", "c2"}));
  CHECK(same.leader_payoff == 0);
  CHECK(same.follower_payoff == 0);
  // The follower does not see the leader's card of the current round.
  const Node& f1 = g.node(Walk(g, {"c1"}));
  const Node& f3 = g.node(Walk(g, {"c3"}));
  CHECK(f1.infoset == f3.infoset);
  // Cards played are public afterwards.
  CHECK(g.node(Walk(g, {"c1", "c2"})).infoset != g.node(Walk(g, {"c1", "c3"})).infoset);
}

TEST_CASE("Goofspiel generalizes to other deck sizes") {
  const GameTree g2 = GenGoofspiel({2});
  CHECK(g2.NumTerminals() == 4);
  CHECK(ValidatePerfectRecall(g2).ok);
  const GameTree g4 = GenGoofspiel({4});
  CHECK(g4.NumTerminals() == 576);
  CHECK(ValidatePerfectRecall(g4).ok);
  CHECK_THROWS_AS(GenGoofspiel({0}), std::invalid_argument);
}

TEST_CASE("one-step search game") {
  SearchGameConfig cfg;
  cfg.horizon = 1;
  const GameTree g = GenSearchGame(cfg);
  CHECK(g.nodes().size() == 17);
  CHECK(g.NumInfosets(PlayerId::kLeader) == 1);
  CHECK(g.NumInfosets(PlayerId::kFollower) == 1);
  // Staying put sends the first patrol to B; the follower moving there is caught.
  const Node& caught = g.node(Walk(g, {"ss", "to_B"}));
  CHECK(caught.leader_payoff == cfg.capture_leader);
  CHECK(caught.follower_payoff == cfg.capture_follower);
  const Node& timeout = g.node(Walk(g, {"ss", "to_C"}));
  CHECK(timeout.follower_payoff == cfg.timeout_follower);
  const Node& moved = g.node(Walk(g, {"ms", "to_C"}));
  CHECK(moved.leader_payoff == cfg.capture_leader);
}

TEST_CASE("two-step search game matches a direct state count") {
  const SearchGameConfig cfg;
  const GameTree g = GenSearchGame(cfg);
  CHECK(static_cast<long>(g.nodes().size()) == CountSearchNodes(DefaultSearchGraph(cfg), 2));
  CHECK(g.nodes().size() == 129);
  const SequenceForm sf(g);
  CHECK(sf.seqs(PlayerId::kLeader).size() == 21);
  CHECK(sf.seqs(PlayerId::kFollower).size() == 11);
  CHECK(ValidatePerfectRecall(g).ok);
  for (int h = 1; h <= 3; ++h) {
    SearchGameConfig c;
    c.horizon = h;
    CHECK(static_cast<long>(GenSearchGame(c).nodes().size()) ==
          CountSearchNodes(DefaultSearchGraph(c), h));
  }
}

TEST_CASE("waiting erases the trace left behind") {
  SearchGameConfig cfg;
  cfg.horizon = 3;
  const GameTree g = GenSearchGame(cfg);
  // Moving from S leaves a trace there; labels record what the leader saw.
  const std::set<std::string> labels = [&] {
    std::set<std::string> out;
    for (int gid : g.PlayerInfosets(PlayerId::kLeader)) out.insert(g.infoset(gid).label);
    return out;
  }();
  CHECK(labels.count("L") == 1);
  CHECK(labels.count("Lmm:00") == 1);
  const int n = Walk(g, {"mm", "wait", "mm", "wait"});
  CHECK_FALSE(g.node(n).terminal);
}

TEST_CASE("shipped data files equal the generators") {
  const std::string dir = QPSSE_DATA_DIR;
  SearchGameConfig k1;
  k1.horizon = 1;
  CHECK(ReadFile(dir + "/search_k1.game") == WriteGame(GenSearchGame(k1)));
  CHECK(ReadFile(dir + "/search_k2.game") == WriteGame(GenSearchGame({})));
  CHECK(ReadFile(dir + "/goofspiel3.game") == WriteGame(GenGoofspiel3()));
}

TEST_CASE("two-stage and mixed-root shapes") {
  const GameTree a = GenTwoStageLeaderGame({{1, 0}, {0, 0}, {0, 0}});
  CHECK(a.NumInfosets(PlayerId::kLeader) == 2);
  CHECK(a.NumInfosets(PlayerId::kFollower) == 0);
  const GameTree b = GenMixedRootGame({{1, 0}, {0, 0}, {0, 0}, {0, 1}});
  CHECK(b.NumInfosets(PlayerId::kLeader) == 2);
  CHECK(b.NumInfosets(PlayerId::kFollower) == 1);
  CHECK_THROWS_AS(GenTwoStageLeaderGame({{1, 0}}), std::invalid_argument);
}
