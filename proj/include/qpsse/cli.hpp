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


// Batch driver shared by the qpsse executable and the tests.

#ifndef QPSSE_CLI_HPP_
#define QPSSE_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qpsse {

enum class RunMode { kSseUnperturbed, kSsePerturbed, kQpsseAnytime };

std::optional<RunMode> ParseRunMode(const std::string& text);

enum ExitCode { kExitOk = 0, kExitBadConfig = 2, kExitInfeasible = 3, kExitInternal = 4 };

struct RunConfig {
  std::string game_path;
  RunMode mode = RunMode::kQpsseAnytime;
  std::string scheme = "miltersen";  // or a scheme file path
  std::vector<std::string> eps;      // rationals; one entry for sse-perturbed
  std::string out_solution;          // empty: not written
  std::string out_csv;
  std::string verify = "standard";   // off | standard | paranoid
  std::optional<double> timeout_seconds;
  std::string dump_matrices;
  // Writes 0 in the seconds column so repeated runs give identical CSVs.
  bool omit_timing = false;
  int threads = 0;  // 0: OpenMP default
  // Paranoid checks are skipped on games with more nodes than this.
  int paranoid_node_limit = 2000;
};

// Runs one configuration. Progress goes to `log`; on failure a one-line JSON
// error report goes to `err`. Returns an ExitCode.
int Run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

// Shortest round-trip text of a double, used for the float CSV columns.
std::string DisplayDouble(double v);

}  // namespace qpsse

#endif  // QPSSE_CLI_HPP_
