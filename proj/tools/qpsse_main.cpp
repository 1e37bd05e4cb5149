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


#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qpsse/benchmarks.hpp"
#include "qpsse/cli.hpp"
#include "qpsse/game_io.hpp"

namespace {

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-perfect Stackelberg equilibria of two-player extensive-form games"};
  qpsse::RunConfig cfg;
  std::string mode = "qpsse-anytime";
  std::string eps, schedule;
  double timeout = 0;
  app.add_option("--game", cfg.game_path, "game file");
  app.add_option("--mode", mode, "sse-unperturbed | sse-perturbed | qpsse-anytime");
  app.add_option("--scheme", cfg.scheme, "miltersen or a scheme file");
  app.add_option("--eps", eps, "single epsilon (rational)");
  app.add_option("--eps-schedule", schedule, "comma separated, strictly decreasing");
  app.add_option("--out-solution", cfg.out_solution, "solution file");
  app.add_option("--out-csv", cfg.out_csv, "per-epsilon CSV");
  app.add_option("--verify", cfg.verify, "off | standard | paranoid");
  app.add_option("--timeout-seconds", timeout, "wall-clock limit per epsilon");
  app.add_option("--dump-matrices", cfg.dump_matrices, "write F, f, U as text");
  app.add_flag("--omit-timing", cfg.omit_timing, "write 0 in the seconds column");
  app.add_option("--threads", cfg.threads, "OpenMP threads for LP kernels");

  auto* gen = app.add_subcommand("gen", "write a benchmark game file");
  std::string family, out;
  int horizon = 2, cards = 3;
  std::uint64_t seed = 1;
  qpsse::RandomGameConfig rcfg;
  gen->add_option("family", family, "search | goofspiel | random")->required();
  gen->add_option("-o,--out", out, "output path (default stdout)");
  gen->add_option("--horizon", horizon, "search game time limit");
  gen->add_option("--cards", cards, "goofspiel deck size");
  gen->add_option("--seed", seed, "random game seed");
  gen->add_option("--max-nodes", rcfg.max_nodes);
  gen->add_option("--max-follower-infosets", rcfg.max_follower_infosets);
  gen->add_option("--max-actions", rcfg.max_actions);
  gen->add_option("--max-depth", rcfg.max_depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qpsse::kExitBadConfig;
  }

  if (*gen) {
    qpsse::GameTree g;
    try {
      if (family == "search") {
        qpsse::SearchGameConfig scfg;
        scfg.horizon = horizon;
        g = qpsse::GenSearchGame(scfg);
      } else if (family == "goofspiel") {
        g = qpsse::GenGoofspiel(qpsse::GoofspielConfig{cards});
      } else if (family == "random") {
        g = qpsse::GenRandomGame(rcfg, seed);
      } else {
        std::cerr << "unknown family '" << family << "'\n";
        return qpsse::kExitBadConfig;
      }
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return qpsse::kExitBadConfig;
    }
    if (out.empty()) {
      std::cout << qpsse::WriteGame(g);
    } else {
      std::ofstream(out, std::ios::binary) << qpsse::WriteGame(g);
    }
    return 0;
  }

  auto parsed = qpsse::ParseRunMode(mode);
  if (!parsed) {
    std::cerr << "{\"error\":\"bad_config\",\"exit_code\":2,\"message\":\"unknown mode\"}\n";
    return qpsse::kExitBadConfig;
  }
  cfg.mode = *parsed;
  if (!eps.empty() && !schedule.empty()) {
    std::cerr << "{\"error\":\"bad_config\",\"exit_code\":2,"
                 "\"message\":\"give --eps or --eps-schedule, not both\"}\n";
    return qpsse::kExitBadConfig;
  }
  cfg.eps = SplitList(eps.empty() ? schedule : eps);
  if (timeout != 0) cfg.timeout_seconds = timeout;
  return qpsse::Run(cfg, std::clog, std::cerr);
}
