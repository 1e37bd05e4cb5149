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


#ifndef QPSSE_PERTURBATION_HPP_
#define QPSSE_PERTURBATION_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpsse/sequence_form.hpp"

namespace qpsse {

// Per-sequence lower-bound polynomials xi_i(e, sigma); entry 0 is the
// constant 1 for the empty sequence.
struct PerturbationScheme {
  std::string id;
  std::vector<EpsPolynomial> xi[2];
};

PerturbationScheme MiltersenScheme(const SequenceForm& sf);

// Text lines "<player> <sequence> <polynomial>", e.g.
//   leader l2:a,l3:b 1/3*e^2 + e^4
// Unlisted sequences keep the e^|sigma| default.
PerturbationScheme ParseScheme(const SequenceForm& sf, std::string_view text,
                               std::string id);
PerturbationScheme LoadSchemeFile(const SequenceForm& sf, const std::string& path);

enum class SchemeCondition { kPolynomial = 1, kVanishing = 2, kRatio = 3 };

struct SchemeViolation {
  PlayerId player = PlayerId::kLeader;
  int sequence = -1;
  int parent = -1;  // ratio condition only
  SchemeCondition condition = SchemeCondition::kPolynomial;
  std::string message;
};

std::vector<Rational> DefaultProbeEps();

// Condition (ii) is checked on every sequence before any (iii) check.
std::optional<SchemeViolation> ValidateScheme(
    const SequenceForm& sf, const PerturbationScheme& scheme,
    const std::vector<Rational>& probe_eps = DefaultProbeEps());

class SchemeError : public std::runtime_error {
 public:
  explicit SchemeError(SchemeViolation v)
      : std::runtime_error(v.message), violation_(std::move(v)) {}
  const SchemeViolation& violation() const { return violation_; }

 private:
  SchemeViolation violation_;
};

class InfeasibleInstance : public std::runtime_error {
 public:
  InfeasibleInstance(PlayerId player, int infoset, const std::string& what)
      : std::runtime_error(what), player_(player), infoset_(infoset) {}
  PlayerId player() const { return player_; }
  int infoset() const { return infoset_; }  // local infoset, -1 if unknown

 private:
  PlayerId player_;
  int infoset_;
};

struct PerturbedInstance {
  const GameContext* ctx = nullptr;
  bool unperturbed = false;  // xi = 0 off the empty sequence
  Rational eps = 0;
  std::string scheme_id;
  RationalVector xi[2];

  const RationalVector& Xi(PlayerId p) const { return xi[static_cast<int>(p)]; }
};

// Validates the scheme (SchemeError) and the feasibility of R_i(eps) for both
// players with an exact LP (InfeasibleInstance). Requires 0 < eps <= 1.
PerturbedInstance Instantiate(const GameContext& ctx, const PerturbationScheme& scheme,
                              const Rational& eps);
// Same, minus the scheme validation; lets invalid schemes be studied.
PerturbedInstance InstantiateUnchecked(const GameContext& ctx,
                                       const PerturbationScheme& scheme,
                                       const Rational& eps);
PerturbedInstance UnperturbedInstance(const GameContext& ctx);

// Budget beta_I = xi(sigma(I)) - sum_a xi(sigma(I)a), by local infoset.
RationalVector InfosetBudgets(const PerturbedInstance& inst, PlayerId p);

// Smallest feasible value of r(sigma) for every sequence, given r >= xi.
RationalVector MinimalMass(const PerturbedInstance& inst, PlayerId p);

// Maximum follower probability on each follower sequence over R_f(eps).
RationalVector Eta(const PerturbedInstance& inst);
Rational EtaByLp(const PerturbedInstance& inst, int follower_seq);

// Right-hand side f - F xi of the residual system F r~ = f - F xi.
RationalVector ResidualRhs(const PerturbedInstance& inst, PlayerId p);

struct Residual {
  RationalVector base;      // r
  RationalVector residual;  // r - xi
};
Residual ComputeResidual(const PerturbedInstance& inst, PlayerId p,
                         const RationalVector& r);
// r is in R_p(eps): F r = f and r >= xi.
bool IsFeasiblePlan(const PerturbedInstance& inst, PlayerId p, const RationalVector& r);

}  // namespace qpsse

#endif  // QPSSE_PERTURBATION_HPP_
