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


#include "qpsse/cli.hpp"

#include <omp.h>

#include <charconv>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <sstream>

#include "qpsse/best_response.hpp"
#include "qpsse/game_io.hpp"
#include "qpsse/sefce.hpp"

namespace qpsse {
namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void ReportError(std::ostream& err, int code, const std::string& kind,
                 const std::string& message) {
  nlohmann::json j;
  j["exit_code"] = code;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << "\n";
}

std::vector<Rational> ParseSchedule(const RunConfig& cfg) {
  std::vector<Rational> out;
  for (const std::string& text : cfg.eps) {
    try {
      out.push_back(ParseRational(text));
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }
  for (size_t k = 0; k < out.size(); ++k) {
    if (out[k] <= 0 || out[k] > 1) throw ConfigError("epsilon outside (0,1]: " + cfg.eps[k]);
    if (k > 0 && out[k] >= out[k - 1]) {
      throw ConfigError("epsilon schedule not strictly decreasing at " + cfg.eps[k]);
    }
  }
  return out;
}

VerifyLevel ParseVerify(const std::string& text) {
  if (text == "off") return VerifyLevel::kOff;
  if (text == "standard") return VerifyLevel::kStandard;
  if (text == "paranoid") return VerifyLevel::kParanoid;
  throw ConfigError("unknown verification level '" + text + "'");
}

void WritePlan(std::ostream& out, const SequenceForm& sf, const char* tag,
               const RealizationPlan& plan) {
  for (int s = 0; s < static_cast<int>(plan.r.size()); ++s) {
    out << tag << " " << sf.SequenceName(plan.player, s) << " " << ToString(plan.r[s])
        << "\n";
  }
}

void WriteResult(std::ostream& out, const SequenceForm& sf, const SseResult& r) {
  out << "status " << (r.found ? "ok" : (r.stats.timed_out ? "time-limit" : "none")) << "\n";
  out << "bnb_nodes " << r.stats.bnb_nodes << "\n";
  out << "lp_solves " << r.stats.lp_solves << "\n";
  out << "pivots " << r.stats.pivots << "\n";
  if (!r.found) return;
  out << "leader_value " << ToString(r.leader_value) << "\n";
  out << "follower_value " << ToString(r.follower_value) << "\n";
  WritePlan(out, sf, "leader", r.leader);
  WritePlan(out, sf, "follower", r.follower);
}

std::string CsvRow(const std::string& eps, const SseResult* r, const Rational* loss,
                   double seconds, bool omit_timing) {
  std::ostringstream row;
  row << eps << ",";
  if (r != nullptr && r->found) {
    row << ToString(r->leader_value) << "," << DisplayDouble(ToDouble(r->leader_value));
  } else {
    row << "NA,NA";
  }
  row << ",";
  if (loss != nullptr) {
    row << ToString(*loss) << "," << DisplayDouble(ToDouble(*loss));
  } else {
    row << "NA,NA";
  }
  const long lp = r ? r->stats.lp_solves : 0;
  const long nodes = r ? r->stats.bnb_nodes : 0;
  row << "," << lp << "," << nodes << "," << (omit_timing ? "0" : DisplayDouble(seconds));
  return row.str();
}

void LogResult(std::ostream& log, const std::string& what, const SseResult& r) {
  log << what << ": " << (r.found ? "value " + ToString(r.leader_value) : "no value")
      << " bnb_nodes=" << r.stats.bnb_nodes << " lp_solves=" << r.stats.lp_solves
      << " pivots=" << r.stats.pivots << " seconds=" << r.stats.seconds
      << (r.stats.timed_out ? " (time limit)" : "") << "\n";
}

int RunChecked(const RunConfig& cfg, std::ostream& log) {
  if (cfg.game_path.empty()) throw ConfigError("no game file given");
  const std::vector<Rational> schedule = ParseSchedule(cfg);
  if (cfg.mode == RunMode::kSsePerturbed && schedule.size() != 1) {
    throw ConfigError("sse-perturbed needs exactly one epsilon");
  }
  if (cfg.mode == RunMode::kQpsseAnytime && schedule.empty()) {
    throw ConfigError("qpsse-anytime needs an epsilon schedule");
  }
  if (cfg.mode == RunMode::kSseUnperturbed && !schedule.empty()) {
    throw ConfigError("sse-unperturbed takes no epsilon");
  }
  if (cfg.timeout_seconds && *cfg.timeout_seconds <= 0) {
    throw ConfigError("timeout must be positive");
  }
  AnytimeOptions options;
  options.verify = ParseVerify(cfg.verify);
  options.timeout_seconds = cfg.timeout_seconds;
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  GameTree tree = [&] {
    try {
      return LoadGameFile(cfg.game_path);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    } catch (const GameError& e) {
      throw ConfigError(e.what());
    }
  }();
  const int num_nodes = static_cast<int>(tree.nodes().size());
  if (options.verify == VerifyLevel::kParanoid && num_nodes > cfg.paranoid_node_limit) {
    log << "paranoid checks skipped: " << num_nodes << " nodes exceed the limit of "
        << cfg.paranoid_node_limit << "; running standard checks\n";
    options.verify = VerifyLevel::kStandard;
  }
  std::unique_ptr<GameContext> ctx;
  try {
    ctx = std::make_unique<GameContext>(std::move(tree));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());  // imperfect recall
  }
  log << "game " << cfg.game_path << ": " << num_nodes << " nodes, "
      << ctx->sf.seqs(PlayerId::kLeader).size() << " leader and "
      << ctx->sf.seqs(PlayerId::kFollower).size() << " follower sequences\n";
  if (!cfg.dump_matrices.empty()) {
    std::ofstream dump(cfg.dump_matrices, std::ios::binary);
    if (!dump) throw ConfigError("cannot write " + cfg.dump_matrices);
    dump << DumpMatrices(ctx->sf, ctx->m);
  }

  PerturbationScheme scheme;
  if (cfg.scheme == "miltersen") {
    scheme = MiltersenScheme(ctx->sf);
  } else {
    try {
      scheme = LoadSchemeFile(ctx->sf, cfg.scheme);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.mode != RunMode::kSseUnperturbed) {
    if (auto v = ValidateScheme(ctx->sf, scheme)) throw ConfigError(v->message);
  }

  RequireSupported(UnperturbedInstance(*ctx));
  if (cfg.mode == RunMode::kSsePerturbed) {
    // Single-epsilon runs fail hard instead of marking the row.
    RequireSupported(Instantiate(*ctx, scheme, schedule.front()));
  }

  const AnytimeResult result = AnytimeQpsse(*ctx, scheme, schedule, options);
  LogResult(log, "unperturbed", result.unperturbed);
  for (const AnytimeRow& row : result.rows) {
    LogResult(log, "eps " + ToString(row.eps), row.result);
    if (!row.ok) log << "eps " << ToString(row.eps) << " marked: " << row.error << "\n";
  }
  if (cfg.mode == RunMode::kSsePerturbed && !result.rows.front().ok) {
    if (result.rows.front().result.stats.timed_out) {
      log << "time limit reached\n";
    } else {
      throw InfeasibleInstance(PlayerId::kFollower, -1, result.rows.front().error);
    }
  }

  if (!cfg.out_solution.empty()) {
    std::ofstream out(cfg.out_solution, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.out_solution);
    out << "qpsse-solution v1\n";
    out << "scheme " << scheme.id << "\n";
    out << "nodes " << num_nodes << "\n";
    out << "[unperturbed]\n";
    WriteResult(out, ctx->sf, result.unperturbed);
    for (const AnytimeRow& row : result.rows) {
      out << "[eps " << ToString(row.eps) << "]\n";
      if (!row.ok) out << "error " << row.error << "\n";
      WriteResult(out, ctx->sf, row.result);
      if (row.result.found && result.unperturbed.found) {
        out << "loss " << ToString(row.loss) << "\n";
      }
    }
  }
  if (!cfg.out_csv.empty()) {
    std::ofstream out(cfg.out_csv, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.out_csv);
    out << "epsilon,leader_value_exact,leader_value,loss_exact,loss,lp_solves,bnb_nodes,"
           "seconds\n";
    if (cfg.mode == RunMode::kSseUnperturbed) {
      const Rational zero = 0;
      const SseResult& r = result.unperturbed;
      out << CsvRow("0", &r, r.found ? &zero : nullptr, r.stats.seconds, cfg.omit_timing)
          << "\n";
    }
    for (const AnytimeRow& row : result.rows) {
      const bool has_loss = row.ok && result.unperturbed.found;
      out << CsvRow(ToString(row.eps), row.ok ? &row.result : nullptr,
                    has_loss ? &row.loss : nullptr, row.result.stats.seconds,
                    cfg.omit_timing)
          << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

std::optional<RunMode> ParseRunMode(const std::string& text) {
  if (text == "sse-unperturbed") return RunMode::kSseUnperturbed;
  if (text == "sse-perturbed") return RunMode::kSsePerturbed;
  if (text == "qpsse-anytime") return RunMode::kQpsseAnytime;
  return std::nullopt;
}

std::string DisplayDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int Run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    return RunChecked(cfg, log);
  } catch (const ConfigError& e) {
    ReportError(err, kExitBadConfig, "bad_config", e.what());
    return kExitBadConfig;
  } catch (const UnsupportedGame& e) {
    ReportError(err, kExitInfeasible, "unsupported", e.what());
    return kExitInfeasible;
  } catch (const InfeasibleInstance& e) {
    ReportError(err, kExitInfeasible, "infeasible", e.what());
    return kExitInfeasible;
  } catch (const SchemeError& e) {
    ReportError(err, kExitBadConfig, "bad_scheme", e.what());
    return kExitBadConfig;
  } catch (const std::exception& e) {
    ReportError(err, kExitInternal, "internal", e.what());
    return kExitInternal;
  }
}

}  // namespace qpsse
