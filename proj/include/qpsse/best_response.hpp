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


// Follower best responses in the perturbed game and the structural checks
// that certify them.

#ifndef QPSSE_BEST_RESPONSE_HPP_
#define QPSSE_BEST_RESPONSE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qpsse/exact_lp.hpp"
#include "qpsse/perturbation.hpp"

namespace qpsse {

// max (U_f^T r_l) . r~ s.t. F_f r~ = f_f - F_f xi_f, r~ >= 0. Variables are
// the follower residuals, one per sequence. Throws std::invalid_argument when
// r_l is not in R_l(eps).
ExactLP BuildPrimal(const PerturbedInstance& inst, const RationalVector& r_leader);

// min (f_f - F_f xi_f)^T v s.t. F_f^T v >= U_f^T r_l, v free. Variable 0 is
// the root entry, variable 1+k the local follower infoset k.
ExactLP BuildDual(const PerturbedInstance& inst, const RationalVector& r_leader);

struct BestResponse {
  RationalVector r_follower;  // residual + xi_f
  RationalVector residual;
  RationalVector v;           // optimal dual values
  Rational residual_value;    // primal optimum
  Rational follower_value;    // r_l^T U_f r_f
};

BestResponse SolveBestResponse(const PerturbedInstance& inst,
                               const RationalVector& r_leader,
                               const SolveOptions& options = {});

// max over R_f(I) (or R_f(a) when action is set) of the follower's expected
// utility from sequences through I, against r_l.
Rational SubgameValue(const GameContext& ctx, const RationalVector& r_leader,
                      int follower_infoset, std::optional<int> action = std::nullopt);

struct OptimalityViolation {
  int infoset = -1;
  int action = -1;
  Rational value_action;
  Rational value_all;
};

// Every (I, a) carrying residual mass must be optimal in the subgame at I.
std::optional<OptimalityViolation> CheckResidualOptimality(const PerturbedInstance& inst,
                                                    const RationalVector& r_leader,
                                                    const RationalVector& r_follower);

struct IBestResponseResult {
  bool ok = true;
  int action = -1;  // first offending action
  Rational value_action, value_all;
  // The test is the sufficient condition: each action played with positive
  // probability attains the subgame maximum.
  std::string Describe() const;
};

IBestResponseResult CheckIBestResponse(const GameContext& ctx,
                                       const BehavioralStrategy& leader,
                                       const BehavioralStrategy& follower,
                                       int follower_infoset);

// All follower infosets, evaluated in parallel. Entry k is infoset k.
std::vector<IBestResponseResult> CheckIBestResponseAll(const GameContext& ctx,
                                                       const BehavioralStrategy& leader,
                                                       const BehavioralStrategy& follower);

struct DualStructureReport {
  std::vector<int> value_mismatch;           // v_I != subgame value at I
  std::vector<std::pair<int, int>> tight_but_suboptimal;  // tight (I, a) rows
  bool ok() const { return value_mismatch.empty() && tight_but_suboptimal.empty(); }
};

// v_I equals the subgame value at every infoset, and a tight dual row (I, a)
// means a attains that value.
DualStructureReport CheckDualStructure(const PerturbedInstance& inst,
                                       const RationalVector& r_leader,
                                       const RationalVector& v);

}  // namespace qpsse

#endif  // QPSSE_BEST_RESPONSE_HPP_
