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


// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "oracles.hpp"
#include "qpsse/best_response.hpp"
#include "qpsse/cli.hpp"
#include "qpsse/game_io.hpp"
#include "qpsse/sefce.hpp"

namespace {

using namespace qpsse;
using Clock = std::chrono::steady_clock;

// Pinned limits. Exact criteria compare rationals with zero tolerance.
constexpr double kLpSeconds = 60;
constexpr double kBestResponseSeconds = 300;
constexpr double kSseSeconds = 600;
constexpr double kSecondsPerEps = 1800;
const Rational kFinalLossTolerance(1, 100);

const std::vector<Rational> kCorpusEps = {Rational(1, 10), Rational(1, 50), Rational(1, 100)};
const std::vector<Rational> kSchedule = {Rational(1, 10), Rational(1, 100), Rational(1, 1000),
                                         Rational(1, 10000)};

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

double Since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

void Fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

using Contexts = std::vector<std::unique_ptr<GameContext>>;

Contexts MakeContexts(std::vector<GameTree> games) {
  Contexts out;
  for (auto& g : games) out.push_back(std::make_unique<GameContext>(std::move(g)));
  return out;
}

// Shared across criteria 2-5.
struct BrCase {
  const GameContext* ctx;
  Rational eps;
  RationalVector r_leader;
};

long g_optimality_checks = 0;
long g_optimality_violations = 0;

void CountOptimalityCheck(const PerturbedInstance& inst, const RationalVector& rl,
                   const RationalVector& rf) {
  ++g_optimality_checks;
  if (CheckResidualOptimality(inst, rl, rf)) ++g_optimality_violations;
}

Outcome Criterion1() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::vector<ExactLP> lps;
  for (int i = 0; i < 200; ++i) lps.push_back(oracle::RandomLp(rng));
  std::vector<std::string> errors(lps.size());
  int optimal = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : optimal)
  for (int i = 0; i < static_cast<int>(lps.size()); ++i) {
    SolveOptions opt;
    opt.parallel = false;
    opt.verify = false;
    opt.rule = i % 2 == 0 ? PivotRule::kBland : PivotRule::kHybrid;
    const LpSolution sol = Solve(lps[i], opt);
    const oracle::EnumResult ref = oracle::EnumerateLp(lps[i]);
    std::string& err = errors[i];
    if (sol.status != ref.status) {
      err = "status " + std::string(StatusName(sol.status)) + " vs " +
            std::string(StatusName(ref.status));
    } else if (sol.status == LpStatus::kOptimal) {
      ++optimal;
      if (sol.objective != ref.objective) {
        err = "objective " + ToString(sol.objective) + " vs " + ToString(ref.objective);
      } else {
        err = oracle::CheckCertificate(lps[i], sol);
      }
    }
  }
  for (size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) Fail(o, "lp " + std::to_string(i) + ": " + errors[i]);
  }
  o.seconds = Since(start);
  if (o.seconds > kLpSeconds) Fail(o, "runtime over limit");
  if (o.pass) {
    o.detail = "200 LPs (" + std::to_string(optimal) +
               " optimal) agree with vertex enumeration, certificates exact";
  }
  return o;
}

Outcome Criterion2(const std::vector<BrCase>& cases, long* checked) {
  Outcome o;
  const auto start = Clock::now();
  for (const BrCase& c : cases) {
    const PerturbedInstance inst = Instantiate(*c.ctx, MiltersenScheme(c.ctx->sf), c.eps);
    const BestResponse br = SolveBestResponse(inst, c.r_leader);
    const oracle::BrOracle ref = oracle::BestResponseByEnumeration(inst, c.r_leader);
    if (br.residual_value != ref.residual_value || br.follower_value != ref.follower_value) {
      Fail(o, "best response differs from enumeration at eps " + ToString(c.eps));
    }
    const LpSolution dual = Solve(BuildDual(inst, c.r_leader));
    if (dual.status != LpStatus::kOptimal || dual.objective != br.residual_value) {
      Fail(o, "dual optimum differs from primal optimum");
    }
    CountOptimalityCheck(inst, c.r_leader, br.r_follower);
    ++*checked;
  }
  o.seconds = Since(start);
  if (o.seconds > kBestResponseSeconds) Fail(o, "runtime over limit");
  if (o.pass) o.detail = std::to_string(cases.size()) + " instances, primal = oracle = dual";
  return o;
}

Outcome Criterion3(const std::vector<BrCase>& cases) {
  Outcome o;
  const auto start = Clock::now();
  long infosets = 0, tight = 0;
  for (const BrCase& c : cases) {
    const PerturbedInstance inst = Instantiate(*c.ctx, MiltersenScheme(c.ctx->sf), c.eps);
    const BestResponse br = SolveBestResponse(inst, c.r_leader);
    const auto& ps = c.ctx->sf.seqs(PlayerId::kFollower);
    const RationalVector u = c.ctx->m.U[1].TransposeMultiply(c.r_leader);
    for (int k = 0; k < static_cast<int>(ps.extension.size()); ++k) {
      ++infosets;
      const Rational all = oracle::SubgameValueDp(*c.ctx, c.r_leader, k);
      if (br.v[1 + k] != all) Fail(o, "dual value differs from subgame value");
      for (int a = 0; a < static_cast<int>(ps.extension[k].size()); ++a) {
        const int s = ps.extension[k][a];
        Rational rhs = u[s];
        for (int j : ps.child_infosets[s]) rhs += br.v[1 + j];
        if (br.v[1 + k] != rhs) continue;
        ++tight;
        if (oracle::SubgameValueDp(*c.ctx, c.r_leader, k, a) != all) {
          Fail(o, "tight row with a suboptimal action");
        }
      }
    }
    if (!CheckDualStructure(inst, c.r_leader, br.v).ok()) {
      Fail(o, "library dual-structure check disagrees");
    }
  }
  o.seconds = Since(start);
  if (o.pass) {
    o.detail = std::to_string(infosets) + " infosets, " + std::to_string(tight) +
               " tight rows, zero violations";
  }
  return o;
}

Outcome Criterion5(const Contexts& corpus) {
  Outcome o;
  const auto start = Clock::now();
  long seqs = 0;
  for (const auto& ctx : corpus) {
    for (const Rational& eps : kCorpusEps) {
      const PerturbedInstance inst = Instantiate(*ctx, MiltersenScheme(ctx->sf), eps);
      const RationalVector eta = Eta(inst);
      for (int s = 0; s < static_cast<int>(eta.size()); ++s) {
        ++seqs;
        if (eta[s] != EtaByLp(inst, s) || eta[s] != oracle::MaxMassByEnumeration(inst, s)) {
          Fail(o, "eta mismatch at sequence " + std::to_string(s));
        }
      }
    }
  }
  o.seconds = Since(start);
  if (o.pass) o.detail = std::to_string(seqs) + " sequences, recursion = LP = enumeration";
  return o;
}

Outcome Criterion6() {
  Outcome o;
  const auto start = Clock::now();
  GameContext ctx(GenTwoStageLeaderGame({{1, 0}, {0, 0}, {2, 0}}));
  auto scheme = [&](const std::string& text, const std::string& id) {
    return ParseScheme(ctx.sf, text, id);
  };
  const auto bad_iii = ValidateScheme(
      ctx.sf, scheme("leader a1 e\nleader a2 e\nleader a2,a3 1/3*e\nleader a2,a4 1/3*e\n",
                     "obs1"));
  const int a2 = ctx.sf.FindSequence(PlayerId::kLeader, "a2");
  const int a2a3 = ctx.sf.FindSequence(PlayerId::kLeader, "a2,a3");
  if (!bad_iii || bad_iii->condition != SchemeCondition::kRatio ||
      bad_iii->sequence != a2a3 || bad_iii->parent != a2) {
    Fail(o, "eps/3 scheme not rejected for the ratio condition at (a2a3, a2)");
  }
  const auto bad_ii = ValidateScheme(
      ctx.sf, scheme("leader a1 e\nleader a2 1/3\nleader a2,a3 1/3*e\nleader a2,a4 1/3*e\n",
                     "obs1-const"));
  if (!bad_ii || bad_ii->condition != SchemeCondition::kVanishing || bad_ii->sequence != a2) {
    Fail(o, "constant 1/3 scheme not rejected for the vanishing condition");
  }
  if (ValidateScheme(ctx.sf, MiltersenScheme(ctx.sf))) Fail(o, "e^|s| scheme rejected");
  o.seconds = Since(start);
  if (o.pass) {
    o.detail = "ratio condition rejected at (a2a3, a2); vanishing condition rejected at a2; "
               "e^|s| accepted";
  }
  return o;
}

Outcome Criterion7(const Contexts& games) {
  Outcome o;
  const auto start = Clock::now();
  long pure = 0;
  for (size_t i = 0; i < games.size(); ++i) {
    const PerturbedInstance inst = UnperturbedInstance(*games[i]);
    const SseResult res = SolveSse(inst);
    const oracle::SseOracle ref = oracle::SseByEnumeration(inst);
    pure += ref.candidates;
    if (!res.found || !ref.found || res.leader_value != ref.value) {
      Fail(o, "game " + std::to_string(i) + ": " +
                  (res.found ? ToString(res.leader_value) : "none") + " vs oracle " +
                  (ref.found ? ToString(ref.value) : "none"));
    }
  }
  o.seconds = Since(start);
  if (o.seconds > kSseSeconds) Fail(o, "runtime over limit");
  if (o.pass) {
    o.detail = std::to_string(games.size()) + " games, " + std::to_string(pure) +
               " pure follower strategies enumerated, all values equal";
  }
  return o;
}

Outcome Criterion8(const Contexts& games) {
  Outcome o;
  const auto start = Clock::now();
  int solves = 0;
  for (size_t i = 0; i < games.size(); ++i) {
    for (const Rational eps : {Rational(1, 10), Rational(1, 50)}) {
      const PerturbedInstance inst = Instantiate(*games[i], MiltersenScheme(games[i]->sf), eps);
      const SseResult res = SolveSse(inst);
      const oracle::SseOracle ref = oracle::SseByEnumeration(inst);
      ++solves;
      if (!res.found || !ref.found || res.leader_value != ref.value) {
        Fail(o, "game " + std::to_string(i) + " eps " + ToString(eps) + ": " +
                    (res.found ? ToString(res.leader_value) : "none") + " vs oracle " +
                    (ref.found ? ToString(ref.value) : "none"));
        continue;
      }
      CountOptimalityCheck(inst, res.leader.r, res.follower.r);
    }
  }
  o.seconds = Since(start);
  if (o.seconds > kSseSeconds) Fail(o, "runtime over limit");
  if (o.pass) o.detail = std::to_string(solves) + " perturbed solves equal the oracle";
  return o;
}

struct TrendRun {
  std::string name;
  std::unique_ptr<GameContext> ctx;
  AnytimeResult result;
  double max_seconds = 0;
};

Outcome Criterion9(std::vector<TrendRun>& runs) {
  Outcome o;
  const auto start = Clock::now();
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  std::ostringstream detail;
  for (TrendRun& run : runs) {
    AnytimeOptions opt;
    opt.timeout_seconds = kSecondsPerEps;
    run.result = AnytimeQpsse(*run.ctx, MiltersenScheme(run.ctx->sf), kSchedule, opt);
    const auto& rows = run.result.rows;
    for (const AnytimeRow& row : rows) {
      run.max_seconds = std::max(run.max_seconds, row.result.stats.seconds);
      if (!row.ok) {
        Fail(o, run.name + " eps " + ToString(row.eps) + ": " + row.error);
        continue;
      }
      if (row.loss != run.result.unperturbed.leader_value - row.result.leader_value) {
        Fail(o, run.name + ": loss not exact");
      }
      const PerturbedInstance inst =
          Instantiate(*run.ctx, MiltersenScheme(run.ctx->sf), row.eps);
      CountOptimalityCheck(inst, row.result.leader.r, row.result.follower.r);
    }
    if (!o.pass) continue;
    const Rational& first = rows.front().loss;
    const Rational& last = rows.back().loss;
    if (last > first) Fail(o, run.name + ": final loss above first loss");
    if (abs(last) > kFinalLossTolerance) Fail(o, run.name + ": final loss too large");
    if (run.max_seconds > kSecondsPerEps) Fail(o, run.name + ": eps solve over time limit");
    detail << run.name << " loss " << DisplayDouble(ToDouble(first)) << " -> "
           << DisplayDouble(ToDouble(last)) << " (max " << run.max_seconds << "s/eps); ";
  }
  omp_set_num_threads(threads);
  o.seconds = Since(start);
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome Criterion10(const std::vector<TrendRun>& runs) {
  Outcome o;
  const auto start = Clock::now();
  long checked = 0;
  for (const TrendRun& run : runs) {
    const AnytimeRow& row = run.result.rows.back();
    if (!row.ok) {
      Fail(o, run.name + ": no solution at the final eps");
      continue;
    }
    const GameContext& ctx = *run.ctx;
    const BehavioralStrategy leader = RealizationToBehavioral(ctx.sf, row.result.leader);
    BehavioralStrategy follower = RealizationToBehavioral(ctx.sf, row.result.follower);
    // The residual recommendation, i.e. the eps -> 0 candidate.
    for (size_t k = 0; k < follower.probs.size(); ++k) {
      const int c = row.result.choice[k];
      if (c < 0) continue;
      for (size_t a = 0; a < follower.probs[k].size(); ++a) {
        follower.probs[k][a] = static_cast<int>(a) == c ? 1 : 0;
      }
    }
    const auto results = CheckIBestResponseAll(ctx, leader, follower);
    for (size_t k = 0; k < results.size(); ++k) {
      ++checked;
      if (!results[k].ok) Fail(o, run.name + " infoset " + std::to_string(k) + ": " +
                                      results[k].Describe());
      const int c = row.result.choice[k];
      if (c >= 0 && oracle::SubgameValueDp(ctx, row.result.leader.r, k, c) !=
                        oracle::SubgameValueDp(ctx, row.result.leader.r, k)) {
        Fail(o, run.name + " infoset " + std::to_string(k) + ": oracle disagrees");
      }
    }
  }
  o.seconds = Since(start);
  if (o.pass) o.detail = std::to_string(checked) + " follower infosets pass, zero violations";
  return o;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Criterion11() {
  Outcome o;
  const auto start = Clock::now();
  const auto base = std::filesystem::temp_directory_path() / "qpsse_determinism";
  std::filesystem::create_directories(base);
  const std::vector<std::pair<std::string, GameTree>> games = {
      {"goofspiel3", GenGoofspiel3()}, {"search_k2", GenSearchGame({})}};
  long compared = 0;
  for (const auto& [name, tree] : games) {
    const auto game_path = base / (name + ".game");
    std::ofstream(game_path, std::ios::binary) << WriteGame(tree);
    std::string outputs[2][2];
    for (int run = 0; run < 2; ++run) {
      RunConfig cfg;
      cfg.game_path = game_path.string();
      cfg.mode = RunMode::kQpsseAnytime;
      for (const Rational& e : kSchedule) cfg.eps.push_back(ToString(e));
      cfg.out_solution = (base / (name + std::to_string(run) + ".sol")).string();
      cfg.out_csv = (base / (name + std::to_string(run) + ".csv")).string();
      cfg.omit_timing = true;
      std::ostringstream log, err;
      const int code = Run(cfg, log, err);
      if (code != 0) Fail(o, name + ": exit " + std::to_string(code) + " " + err.str());
      outputs[run][0] = Slurp(cfg.out_solution);
      outputs[run][1] = Slurp(cfg.out_csv);
    }
    for (int f = 0; f < 2; ++f) {
      ++compared;
      if (outputs[0][f].empty() || outputs[0][f] != outputs[1][f]) {
        Fail(o, name + (f == 0 ? " solution" : " csv") + " files differ");
      }
    }
  }
  o.seconds = Since(start);
  if (o.pass) o.detail = std::to_string(compared) + " file pairs byte-identical";
  return o;
}

}  // namespace

int main() {
  std::cout << "building corpora\n" << std::flush;
  const Contexts br_corpus = MakeContexts(oracle::Corpus(50, oracle::CorpusConfig(6, 60), 1000));
  const Contexts sse7 = MakeContexts(oracle::Corpus(30, oracle::CorpusConfig(8, 60), 2000));
  const Contexts sse8 = MakeContexts(oracle::Corpus(20, oracle::CorpusConfig(6, 60), 3000));
  std::vector<BrCase> cases;
  std::mt19937_64 rng(77);
  for (const auto& ctx : br_corpus) {
    for (const Rational& eps : kCorpusEps) {
      const PerturbedInstance inst = Instantiate(*ctx, MiltersenScheme(ctx->sf), eps);
      cases.push_back({ctx.get(), eps,
                       oracle::RandomPlan(*ctx, PlayerId::kLeader, inst.Xi(PlayerId::kLeader),
                                          rng)});
    }
  }
  std::vector<TrendRun> runs;
  runs.push_back({"goofspiel3", std::make_unique<GameContext>(GenGoofspiel3()), {}, 0});
  runs.push_back({"search_k2", std::make_unique<GameContext>(GenSearchGame({})), {}, 0});

  std::vector<std::pair<int, Outcome>> outcomes;
  auto run = [&](int id, auto&& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "  criterion " << id << " finished in " << o.seconds << "s\n" << std::flush;
    outcomes.emplace_back(id, o);
  };
  long br_checked = 0;
  run(1, [&] { return Criterion1(); });
  run(2, [&] { return Criterion2(cases, &br_checked); });
  run(3, [&] { return Criterion3(cases); });
  run(5, [&] { return Criterion5(br_corpus); });
  run(6, [&] { return Criterion6(); });
  run(7, [&] { return Criterion7(sse7); });
  run(8, [&] { return Criterion8(sse8); });
  run(9, [&] { return Criterion9(runs); });
  run(10, [&] { return Criterion10(runs); });
  run(11, [&] { return Criterion11(); });
  {
    Outcome o;
    o.pass = g_optimality_checks > 0 && g_optimality_violations == 0;
    o.detail = std::to_string(g_optimality_checks) + " solver best responses checked, " +
               std::to_string(g_optimality_violations) + " violations";
    outcomes.emplace_back(4, o);
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool all = true;
  std::cout << "\n";
  for (const auto& [id, o] : outcomes) {
    all = all && o.pass;
    std::printf("criterion %2d: %s | %s | %.1fs\n", id, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), o.seconds);
  }
  return all ? 0 : 1;
}
