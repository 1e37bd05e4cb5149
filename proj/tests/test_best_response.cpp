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

#include <random>

#include "oracles.hpp"
#include "qpsse/best_response.hpp"
#include "qpsse/game_io.hpp"

using namespace qpsse;

namespace {

// Follower prefers a after x and d after y.
const char* kGame = R"(qpsse-game v1
players
leader follower
nodes
0 leader L x,y 1,2
1 follower F a,b 3,4
2 follower G d,e 5,6
terminals
3 1 3
4 0 1
5 2 2
6 -1 0
)";

GameTree Game() { return ParseGame(kGame); }

RationalVector UniformLeader(const GameContext& ctx) {
  return BehavioralToRealization(ctx.sf, UniformStrategy(ctx.game, PlayerId::kLeader)).r;
}

int Seq(const GameContext& ctx, const char* name) {
  return ctx.sf.FindSequence(PlayerId::kFollower, name);
}

}  // namespace

TEST_CASE("best response puts all slack on the better action") {
  const GameContext ctx(Game());
  const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 10));
  const RationalVector rl = UniformLeader(ctx);
  const BestResponse br = SolveBestResponse(inst, rl);
  CHECK(br.r_follower[0] == 1);
  CHECK(br.r_follower[Seq(ctx, "a")] == Rational(9, 10));
  CHECK(br.r_follower[Seq(ctx, "b")] == Rational(1, 10));
  CHECK(br.r_follower[Seq(ctx, "d")] == Rational(9, 10));
  CHECK(br.r_follower[Seq(ctx, "e")] == Rational(1, 10));
  // 1/2 * (27/10 + 1/10) + 1/2 * (18/10 + 0).
  CHECK(br.follower_value == Rational(23, 10));
  CHECK(br.follower_value == SequenceFormUtility(ctx.m, rl, br.r_follower).second);
  CHECK_FALSE(CheckResidualOptimality(inst, rl, br.r_follower).has_value());
  CHECK(CheckDualStructure(inst, rl, br.v).ok());
}

TEST_CASE("slack on a dominated action is reported") {
  const GameContext ctx(Game());
  const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 10));
  const RationalVector rl = UniformLeader(ctx);
  RationalVector rf = SolveBestResponse(inst, rl).r_follower;
  rf[Seq(ctx, "a")] = Rational(1, 2);
  rf[Seq(ctx, "b")] = Rational(1, 2);
  const auto v = CheckResidualOptimality(inst, rl, rf);
  REQUIRE(v.has_value());
  CHECK(ctx.game.infoset(ctx.game.PlayerInfosets(PlayerId::kFollower)[v->infoset]).label == "F");
  CHECK(v->action == 1);
  CHECK(v->value_action == Rational(1, 2));
  CHECK(v->value_all == Rational(3, 2));
}

TEST_CASE("primal and dual optima agree and leader plans are validated") {
  const GameContext ctx(Game());
  const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 10));
  const RationalVector rl = UniformLeader(ctx);
  const LpSolution primal = Solve(BuildPrimal(inst, rl));
  const LpSolution dual = Solve(BuildDual(inst, rl));
  CHECK(primal.objective == dual.objective);
  RationalVector low = rl;
  low[1] = Rational(1, 20);
  low[2] = Rational(19, 20);
  CHECK_THROWS_AS(SolveBestResponse(inst, low), std::invalid_argument);
  RationalVector broken = rl;
  broken[1] = 1;
  CHECK_THROWS_AS(SolveBestResponse(inst, broken), std::invalid_argument);
}

TEST_CASE("best responses match enumeration on random games") {
  std::mt19937_64 rng(5);
  for (const GameTree& g : oracle::Corpus(25, oracle::CorpusConfig(6, 50), 1300)) {
    const GameContext ctx{GameTree(g)};
    for (const Rational eps : {Rational(1, 10), Rational(1, 100)}) {
      const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), eps);
      const RationalVector rl =
          oracle::RandomPlan(ctx, PlayerId::kLeader, inst.Xi(PlayerId::kLeader), rng);
      const BestResponse br = SolveBestResponse(inst, rl);
      const oracle::BrOracle ref = oracle::BestResponseByEnumeration(inst, rl);
      CHECK(br.residual_value == ref.residual_value);
      CHECK(br.follower_value == ref.follower_value);
      CHECK(IsFeasiblePlan(inst, PlayerId::kFollower, br.r_follower));
      CHECK_FALSE(CheckResidualOptimality(inst, rl, br.r_follower).has_value());
      const int n = ctx.game.NumInfosets(PlayerId::kFollower);
      for (int k = 0; k < n; ++k) {
        CHECK(SubgameValue(ctx, rl, k) == oracle::SubgameValueDp(ctx, rl, k));
        CHECK(br.v[1 + k] == oracle::SubgameValueDp(ctx, rl, k));
      }
    }
  }
}

TEST_CASE("infoset-local best response probe") {
  const GameContext ctx(Game());
  const BehavioralStrategy leader = UniformStrategy(ctx.game, PlayerId::kLeader);
  BehavioralStrategy follower = UniformStrategy(ctx.game, PlayerId::kFollower);
  follower.probs[0] = {1, 0};
  follower.probs[1] = {1, 0};
  for (const auto& r : CheckIBestResponseAll(ctx, leader, follower)) CHECK(r.ok);
  follower.probs[1] = {Rational(1, 2), Rational(1, 2)};
  const IBestResponseResult bad = CheckIBestResponse(ctx, leader, follower, 1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.action == 1);
  CHECK(bad.Describe().find("violation") != std::string::npos);
  BehavioralStrategy pure = leader;
  pure.probs[0] = {1, 0};
  CHECK_THROWS_AS(CheckIBestResponse(ctx, pure, follower, 0), std::invalid_argument);
}
