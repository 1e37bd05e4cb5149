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


#include "qpsse/benchmarks.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <stdexcept>

namespace qpsse {
namespace {

// Appends specs with ids in creation order.
class SpecBuilder {
 public:
  int Reserve() {
    specs_.emplace_back();
    specs_.back().id = static_cast<int>(specs_.size()) - 1;
    return specs_.back().id;
  }
  NodeSpec& at(int id) { return specs_[id]; }
  int Terminal(const Rational& ul, const Rational& uf) {
    const int id = Reserve();
    specs_[id].terminal = true;
    specs_[id].leader_payoff = ul;
    specs_[id].follower_payoff = uf;
    return id;
  }
  void Decision(int id, PlayerId owner, std::string infoset,
                std::vector<std::string> actions) {
    specs_[id].owner = owner;
    specs_[id].infoset = std::move(infoset);
    specs_[id].actions = std::move(actions);
  }
  GameDescription Finish() { return GameDescription{std::move(specs_)}; }

 private:
  std::vector<NodeSpec> specs_;
};

}  // namespace

SearchGraph DefaultSearchGraph(const SearchGameConfig& cfg) {
  // S, B, C (zone 1), E, F, H, I (zone 2), goals K and L.
  SearchGraph g;
  g.names = {"S", "B", "C", "E", "F", "H", "I", "K", "L"};
  g.follower_moves = {{1, 2}, {3}, {4}, {4, 5}, {6}, {7}, {8}, {}, {}};
  g.zones = {{1, 2}, {5, 6}};
  g.patrol_start = {1, 5};
  g.start = 0;
  g.goals = {{7, cfg.goal_top}, {8, cfg.goal_bottom}};
  return g;
}

GameTree GenSearchGame(const SearchGameConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("search game horizon must be >= 1");
  const SearchGraph graph = DefaultSearchGraph(cfg);
  const std::vector<std::string> leader_actions = {"ss", "sm", "ms", "mm"};
  auto other = [&](int zone, int pos) {
    const auto& z = graph.zones[zone];
    return z[0] == pos ? z[1] : z[0];
  };
  auto goal_of = [&](int node) -> const Rational* {
    for (const auto& [n, v] : graph.goals) {
      if (n == node) return &v;
    }
    return nullptr;
  };
  SpecBuilder b;
  // traces: bitmask of nodes holding a trace; cleaned: the follower waited
  // at its current node, so leaving it leaves no trace.
  std::function<int(int, int, int, int, bool, int, const std::string&, const std::string&)>
      step = [&](int t, int p1, int p2, int pos, bool cleaned, int traces,
                 const std::string& lhist, const std::string& fhist) {
        const int lnode = b.Reserve();
        b.Decision(lnode, PlayerId::kLeader, "L" + lhist, leader_actions);
        for (int la = 0; la < 4; ++la) {
          const int np1 = (la & 2) ? other(0, p1) : p1;
          const int np2 = (la & 1) ? other(1, p2) : p2;
          const int fnode = b.Reserve();
          std::vector<std::string> factions;
          std::vector<int> targets;
          for (int to : graph.follower_moves[pos]) {
            factions.push_back("to_" + graph.names[to]);
            targets.push_back(to);
          }
          factions.push_back("wait");
          targets.push_back(pos);
          b.Decision(fnode, PlayerId::kFollower, "F" + fhist, factions);
          for (size_t fa = 0; fa < targets.size(); ++fa) {
            const int npos = targets[fa];
            const bool wait = npos == pos;
            int ntraces = traces;
            if (!wait && !cleaned) ntraces |= 1 << pos;
            int child;
            if (npos == np1 || npos == np2) {
              child = b.Terminal(cfg.capture_leader, cfg.capture_follower);
            } else if (const Rational* goal = goal_of(npos)) {
              child = b.Terminal(cfg.goal_leader, *goal);
            } else if (t + 1 == cfg.horizon) {
              child = b.Terminal(cfg.timeout_leader, cfg.timeout_follower);
            } else {
              const std::string obs = std::string(1, (ntraces >> np1) & 1 ? '1' : '0') +
                                      std::string(1, (ntraces >> np2) & 1 ? '1' : '0');
              const std::string sep_l = lhist.empty() ? "" : "|";
              const std::string sep_f = fhist.empty() ? "" : "|";
              child = step(t + 1, np1, np2, npos, wait, ntraces,
                           lhist + sep_l + leader_actions[la] + ":" + obs,
                           fhist + sep_f + factions[fa]);
            }
            b.at(fnode).children.push_back(child);
          }
          b.at(lnode).children.push_back(fnode);
        }
        return lnode;
      };
  step(0, graph.patrol_start[0], graph.patrol_start[1], graph.start, false, 0, "", "");
  return BuildGame(b.Finish());
}

GameTree GenGoofspiel(const GoofspielConfig& cfg) {
  if (cfg.cards < 1) throw std::invalid_argument("goofspiel needs at least one card");
  SpecBuilder b;
  auto card = [](int c) { return "c" + std::to_string(c); };
  auto award = [](int prize, int cl, int cf, Rational& sl, Rational& sf) {
    if (cl > cf) sl += prize;
    if (cf > cl) sf += prize;
  };
  std::function<int(std::vector<int>, std::vector<int>, int, Rational, Rational,
                    const std::string&, const std::string&)>
      round = [&](std::vector<int> hand_l, std::vector<int> hand_f, int prize, Rational sl,
                  Rational sf, const std::string& lhist, const std::string& fhist) {
        if (hand_l.size() == 1) {
          // Last round is forced: resolve it in the payoff.
          award(prize, hand_l[0], hand_f[0], sl, sf);
          return b.Terminal(sl, sf);
        }
        const int lnode = b.Reserve();
        std::vector<std::string> lact, fact;
        for (int c : hand_l) lact.push_back(card(c));
        for (int c : hand_f) fact.push_back(card(c));
        b.Decision(lnode, PlayerId::kLeader, "L" + lhist, lact);
        for (int cl : hand_l) {
          const int fnode = b.Reserve();
          b.Decision(fnode, PlayerId::kFollower, "F" + fhist, fact);
          for (int cf : hand_f) {
            Rational nl = sl, nf = sf;
            award(prize, cl, cf, nl, nf);
            std::vector<int> rl = hand_l, rf = hand_f;
            rl.erase(std::find(rl.begin(), rl.end(), cl));
            rf.erase(std::find(rf.begin(), rf.end(), cf));
            const std::string sep = lhist.empty() ? "" : ",";
            const int child = round(
                rl, rf, prize + 1, nl, nf,
                lhist + sep + std::to_string(cl) + "v" + std::to_string(cf),
                fhist + sep + std::to_string(cf) + "v" + std::to_string(cl));
            b.at(fnode).children.push_back(child);
          }
          b.at(lnode).children.push_back(fnode);
        }
        return lnode;
      };
  std::vector<int> hand;
  for (int c = 1; c <= cfg.cards; ++c) hand.push_back(c);
  round(hand, hand, 1, 0, 0, "", "");
  return BuildGame(b.Finish());
}

GameTree GenGoofspiel3() { return GenGoofspiel(GoofspielConfig{3}); }

GameTree GenTwoStageLeaderGame(const std::vector<PayoffPair>& payoffs) {
  if (payoffs.size() != 3) throw std::invalid_argument("two-stage leader game needs 3 payoffs");
  SpecBuilder b;
  const int root = b.Reserve();
  b.Decision(root, PlayerId::kLeader, "l1", {"a1", "a2"});
  const int t1 = b.Terminal(payoffs[0].first, payoffs[0].second);
  const int l2 = b.Reserve();
  b.Decision(l2, PlayerId::kLeader, "l2", {"a3", "a4"});
  const int t3 = b.Terminal(payoffs[1].first, payoffs[1].second);
  const int t4 = b.Terminal(payoffs[2].first, payoffs[2].second);
  b.at(l2).children = {t3, t4};
  b.at(root).children = {t1, l2};
  return BuildGame(b.Finish());
}

GameTree GenMixedRootGame(const std::vector<PayoffPair>& payoffs) {
  if (payoffs.size() != 4) throw std::invalid_argument("mixed-root game needs 4 payoffs");
  SpecBuilder b;
  const int root = b.Reserve();
  b.Decision(root, PlayerId::kLeader, "l1", {"a1", "a2"});
  const int l2 = b.Reserve();
  b.Decision(l2, PlayerId::kLeader, "l2", {"a3", "a4"});
  b.at(l2).children = {b.Terminal(payoffs[0].first, payoffs[0].second),
                       b.Terminal(payoffs[1].first, payoffs[1].second)};
  const int f1 = b.Reserve();
  b.Decision(f1, PlayerId::kFollower, "f1", {"af1", "af2"});
  b.at(f1).children = {b.Terminal(payoffs[2].first, payoffs[2].second),
                       b.Terminal(payoffs[3].first, payoffs[3].second)};
  b.at(root).children = {l2, f1};
  return BuildGame(b.Finish());
}

GameTree GenRandomGame(const RandomGameConfig& cfg, std::uint64_t seed) {
  if (cfg.max_actions < 2 || cfg.max_nodes < 3) {
    throw std::invalid_argument("random game needs max_actions >= 2 and max_nodes >= 3");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto chance = [&](double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
  };
  struct Pending {
    int id;
    int depth;
    OwnHistory hist[2];
  };
  struct InfoRec {
    PlayerId owner;
    std::string label;
    int actions;
    OwnHistory hist;
  };
  SpecBuilder b;
  std::vector<InfoRec> infos;
  int follower_infosets = 0;
  std::deque<Pending> queue;
  queue.push_back({b.Reserve(), 0, {}});
  int count = 1;
  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    const int room = cfg.max_nodes - count;
    const bool stop = cur.depth >= cfg.max_depth || room < 2 ||
                      (cur.depth > 0 && chance(0.25));
    if (!stop) {
      PlayerId owner = chance(0.5) ? PlayerId::kLeader : PlayerId::kFollower;
      const int o = static_cast<int>(owner);
      std::vector<int> candidates;
      for (size_t k = 0; k < infos.size(); ++k) {
        if (infos[k].owner == owner && infos[k].hist == cur.hist[o] &&
            infos[k].actions <= room) {
          candidates.push_back(static_cast<int>(k));
        }
      }
      int info = -1;
      if (!candidates.empty() && chance(cfg.join_probability)) {
        info = candidates[uniform(0, static_cast<int>(candidates.size()) - 1)];
      } else {
        if (owner == PlayerId::kFollower && follower_infosets >= cfg.max_follower_infosets) {
          owner = PlayerId::kLeader;
        }
        InfoRec rec;
        rec.owner = owner;
        rec.actions = uniform(2, std::min(cfg.max_actions, room));
        rec.hist = cur.hist[static_cast<int>(owner)];
        if (owner == PlayerId::kFollower) {
          rec.label = "f" + std::to_string(follower_infosets++);
        } else {
          rec.label = "l" + std::to_string(infos.size() - follower_infosets);
        }
        infos.push_back(rec);
        info = static_cast<int>(infos.size()) - 1;
      }
      const InfoRec& rec = infos[info];
      std::vector<std::string> actions;
      for (int a = 0; a < rec.actions; ++a) actions.push_back("a" + std::to_string(a));
      b.Decision(cur.id, rec.owner, rec.label, actions);
      for (int a = 0; a < rec.actions; ++a) {
        Pending child{b.Reserve(), cur.depth + 1, {cur.hist[0], cur.hist[1]}};
        child.hist[static_cast<int>(rec.owner)].emplace_back(info, a);
        b.at(cur.id).children.push_back(child.id);
        queue.push_back(std::move(child));
        ++count;
      }
      continue;
    }
    NodeSpec& spec = b.at(cur.id);
    spec.terminal = true;
    const int den = uniform(1, std::max(1, cfg.payoff_denominator));
    spec.leader_payoff = MakeRational(uniform(-cfg.payoff_range, cfg.payoff_range), den);
    spec.follower_payoff = MakeRational(uniform(-cfg.payoff_range, cfg.payoff_range), den);
    spec.leader_payoff.canonicalize();
    spec.follower_payoff.canonicalize();
  }
  return BuildGame(b.Finish());
}

}  // namespace qpsse
