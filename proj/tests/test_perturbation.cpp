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

#include "oracles.hpp"
#include "qpsse/benchmarks.hpp"
#include "qpsse/game_io.hpp"
#include "qpsse/perturbation.hpp"
#include "qpsse/sefce.hpp"

using namespace qpsse;

namespace {

// a1 is best at the root, a4 strictly best after a2.
GameTree TwoStage() { return GenTwoStageLeaderGame({{2, 0}, {0, 0}, {1, 0}}); }

int Seq(const GameContext& ctx, PlayerId p, const char* name) {
  return ctx.sf.FindSequence(p, name);
}

const char* kThreeWay = R"(qpsse-game v1
players
leader follower
nodes
0 leader L x,y 1,2
1 follower F a,b,c 3,4,5
2 follower G d,e 6,7
terminals
3 1 1
4 0 2
5 2 0
6 0 0
7 1 1
)";

}  // namespace

TEST_CASE("Miltersen scheme evaluates to eps to the sequence length") {
  const GameContext ctx(TwoStage());
  const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 10));
  const RationalVector& xi = inst.Xi(PlayerId::kLeader);
  CHECK(xi[0] == 1);
  CHECK(xi[Seq(ctx, PlayerId::kLeader, "a1")] == Rational(1, 10));
  CHECK(xi[Seq(ctx, PlayerId::kLeader, "a4")] == Rational(1, 100));
  CHECK_FALSE(ValidateScheme(ctx.sf, MiltersenScheme(ctx.sf)).has_value());
}

TEST_CASE("scheme validation flags the ratio and vanishing conditions") {
  const GameContext ctx(TwoStage());
  const PerturbationScheme bad = ParseScheme(ctx.sf,
                                             "leader a1 e\n"
                                             "leader a2 e\n"
                                             "leader a3 1/3*e   # same order as its parent\n"
                                             "leader a4 1/3*e\n",
                                             "bad");
  const auto v = ValidateScheme(ctx.sf, bad);
  REQUIRE(v.has_value());
  CHECK(v->condition == SchemeCondition::kRatio);
  CHECK(v->player == PlayerId::kLeader);
  CHECK(v->sequence == Seq(ctx, PlayerId::kLeader, "a3"));
  CHECK(v->parent == Seq(ctx, PlayerId::kLeader, "a2"));

  const PerturbationScheme constant =
      ParseScheme(ctx.sf, "leader a1 e\nleader a2 1/3\nleader a3 1/3*e\nleader a4 1/3*e\n",
                  "constant");
  const auto w = ValidateScheme(ctx.sf, constant);
  REQUIRE(w.has_value());
  CHECK(w->condition == SchemeCondition::kVanishing);
  CHECK(w->sequence == Seq(ctx, PlayerId::kLeader, "a2"));
  CHECK_THROWS_AS(Instantiate(ctx, constant, Rational(1, 10)), SchemeError);

  const PerturbationScheme negative = ParseScheme(ctx.sf, "leader a1 -e\n", "neg");
  CHECK(ValidateScheme(ctx.sf, negative)->condition == SchemeCondition::kVanishing);
}

TEST_CASE("an invalid scheme pins the leader's limit strategy") {
  const GameContext ctx(TwoStage());
  const PerturbationScheme bad = ParseScheme(
      ctx.sf, "leader a1 e\nleader a2 e\nleader a3 1/3*e\nleader a4 1/3*e\n", "bad");
  const int a2 = Seq(ctx, PlayerId::kLeader, "a2");
  const int a3 = Seq(ctx, PlayerId::kLeader, "a3");
  for (const Rational eps : {Rational(1, 10), Rational(1, 100), Rational(1, 1000)}) {
    const PerturbedInstance inst = InstantiateUnchecked(ctx, bad, eps);
    const SseResult sse = SolveSse(inst);
    REQUIRE(sse.found);
    CHECK(sse.leader.r[a2] == eps);
    CHECK(sse.leader.r[a3] / sse.leader.r[a2] == Rational(1, 3));
  }
}

TEST_CASE("scheme files reject malformed lines") {
  const GameContext ctx(TwoStage());
  CHECK_THROWS_AS(ParseScheme(ctx.sf, "chance a1 e\n", "x"), ParseError);
  CHECK_THROWS_AS(ParseScheme(ctx.sf, "leader\n", "x"), ParseError);
  CHECK_THROWS_AS(ParseScheme(ctx.sf, "leader a1\n", "x"), ParseError);
  CHECK_THROWS_AS(ParseScheme(ctx.sf, "leader - e\n", "x"), ParseError);
  CHECK_THROWS(ParseScheme(ctx.sf, "leader nosuch e\n", "x"));
}

TEST_CASE("infeasible budgets name the offending infoset") {
  const GameContext ctx(ParseGame(kThreeWay));
  try {
    Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 2));
    FAIL("expected InfeasibleInstance");
  } catch (const InfeasibleInstance& e) {
    CHECK(e.player() == PlayerId::kFollower);
    CHECK(ctx.game.infoset(ctx.game.PlayerInfosets(PlayerId::kFollower)[e.infoset()]).label ==
          "F");
  }
  CHECK_NOTHROW(Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 3)));
  const GameContext search(GenSearchGame({}));
  CHECK_NOTHROW(Instantiate(search, MiltersenScheme(search.sf), Rational(1, 100)));
}

TEST_CASE("maximal follower mass by closed form, LP and enumeration") {
  const GameContext ctx(ParseGame(kThreeWay));
  const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 10));
  const RationalVector eta = Eta(inst);
  CHECK(eta[Seq(ctx, PlayerId::kFollower, "a")] == Rational(4, 5));
  CHECK(eta[Seq(ctx, PlayerId::kFollower, "d")] == Rational(9, 10));
  for (const GameTree& g : oracle::Corpus(20, oracle::CorpusConfig(6, 50), 900)) {
    const GameContext c{GameTree(g)};
    for (const Rational eps : {Rational(1, 10), Rational(1, 50)}) {
      const PerturbedInstance in = Instantiate(c, MiltersenScheme(c.sf), eps);
      const RationalVector e = Eta(in);
      for (int s = 1; s < c.sf.seqs(PlayerId::kFollower).size(); ++s) {
        CHECK(e[s] == EtaByLp(in, s));
        CHECK(e[s] == oracle::MaxMassByEnumeration(in, s));
        CHECK(e[s] >= in.Xi(PlayerId::kFollower)[s]);
      }
    }
  }
}

TEST_CASE("residuals and plan feasibility") {
  const GameContext ctx(ParseGame(kThreeWay));
  const PerturbedInstance inst = Instantiate(ctx, MiltersenScheme(ctx.sf), Rational(1, 10));
  RationalVector r(ctx.sf.seqs(PlayerId::kFollower).size(), 0);
  r[0] = 1;
  r[Seq(ctx, PlayerId::kFollower, "a")] = Rational(4, 5);
  r[Seq(ctx, PlayerId::kFollower, "b")] = Rational(1, 10);
  r[Seq(ctx, PlayerId::kFollower, "c")] = Rational(1, 10);
  r[Seq(ctx, PlayerId::kFollower, "d")] = Rational(1, 10);
  r[Seq(ctx, PlayerId::kFollower, "e")] = Rational(9, 10);
  CHECK(IsFeasiblePlan(inst, PlayerId::kFollower, r));
  const Residual res = ComputeResidual(inst, PlayerId::kFollower, r);
  CHECK(res.residual[Seq(ctx, PlayerId::kFollower, "a")] == Rational(7, 10));
  CHECK(res.residual[Seq(ctx, PlayerId::kFollower, "b")] == 0);
  r[Seq(ctx, PlayerId::kFollower, "b")] = Rational(1, 20);
  r[Seq(ctx, PlayerId::kFollower, "a")] = Rational(17, 20);
  CHECK_FALSE(IsFeasiblePlan(inst, PlayerId::kFollower, r));
}

TEST_CASE("unperturbed instance has zero lower bounds below the root") {
  const GameContext ctx(GenGoofspiel3());
  const PerturbedInstance inst = UnperturbedInstance(ctx);
  CHECK(inst.unperturbed);
  for (PlayerId p : kStrategicPlayers) {
    CHECK(inst.Xi(p)[0] == 1);
    for (size_t s = 1; s < inst.Xi(p).size(); ++s) CHECK(inst.Xi(p)[s] == 0);
  }
}
