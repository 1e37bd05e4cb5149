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


#ifndef QPSSE_SEQUENCE_FORM_HPP_
#define QPSSE_SEQUENCE_FORM_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpsse/game.hpp"

namespace qpsse {

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::map<std::pair<int, int>, Rational> entries;  // nonzeros only, row-major

  Rational At(int r, int c) const;
  void Add(int r, int c, const Rational& v);
  RationalVector Multiply(const RationalVector& x) const;           // A x
  RationalVector TransposeMultiply(const RationalVector& y) const;  // A^T y
};

struct Sequence {
  int infoset = -1;  // local infoset of the last action; -1 for the empty sequence
  int action = -1;
  int parent = -1;   // sequence without the last action
  int length = 0;
};

struct PlayerSequences {
  std::vector<Sequence> seqs;                    // seqs[0] is the empty sequence
  std::vector<int> infoset_seq;                  // sigma(I), by local infoset
  std::vector<std::vector<int>> extension;       // [I][a] -> sigma(I)a
  std::vector<std::vector<int>> child_infosets;  // [s] -> infosets I with sigma(I) = s

  int size() const { return static_cast<int>(seqs.size()); }
  bool IsPrefix(int prefix, int s) const;  // prefix ⊑ s
};

class SequenceForm {
 public:
  explicit SequenceForm(const GameTree& g);

  const GameTree& game() const { return *game_; }
  const PlayerSequences& seqs(PlayerId p) const { return seqs_[Index(p)]; }
  // sigma_p(h): the player's sequence leading to node h.
  int NodeSequence(PlayerId p, int node) const { return node_seq_[Index(p)][node]; }
  // "label:action,label:action" or "-" for the empty sequence.
  std::string SequenceName(PlayerId p, int s) const;
  // Accepts the output of SequenceName and bare action names when unambiguous.
  int FindSequence(PlayerId p, const std::string& name) const;

 private:
  static int Index(PlayerId p) { return static_cast<int>(p); }
  const GameTree* game_;
  PlayerSequences seqs_[2];
  std::vector<int> node_seq_[2];
};

struct SeqFormMatrices {
  SparseMatrix F[2];
  RationalVector f[2];
  SparseMatrix U[2];  // |Sigma_l| x |Sigma_f|, index 0 = leader payoff
};

// Row 0 of F is the root constraint; row 1+k belongs to local infoset k.
SeqFormMatrices BuildMatrices(const SequenceForm& sf);

struct RealizationPlan {
  PlayerId player = PlayerId::kLeader;
  RationalVector r;
};

bool IsRealizationPlan(const SequenceForm& sf, const RealizationPlan& plan);
RealizationPlan BehavioralToRealization(const SequenceForm& sf,
                                        const BehavioralStrategy& pi);
// Infosets whose parent sequence has zero mass get the uniform distribution.
BehavioralStrategy RealizationToBehavioral(const SequenceForm& sf,
                                           const RealizationPlan& plan);

// (r_l^T U_l r_f, r_l^T U_f r_f).
std::pair<Rational, Rational> SequenceFormUtility(const SeqFormMatrices& m,
                                                  const RationalVector& r_leader,
                                                  const RationalVector& r_follower);

struct RelevanceMap {
  std::vector<std::vector<char>> relevant;  // [leader seq][follower seq]
  // Sequences of the other player relevant to each sequence.
  std::vector<std::vector<int>> rel_leader;    // by leader seq -> follower seqs
  std::vector<std::vector<int>> rel_follower;  // by follower seq -> leader seqs
  // rel(I): union of rel over the extensions of I, by local infoset.
  std::vector<std::vector<int>> rel_infoset_leader;
  std::vector<std::vector<int>> rel_infoset_follower;
  // prec(I) for follower infosets: sigma_f(J)a with sigma_f(J) ⊑ sigma_f(I).
  std::vector<std::vector<int>> prec;

  bool IsRelevant(int leader_seq, int follower_seq) const {
    return relevant[leader_seq][follower_seq] != 0;
  }
};

RelevanceMap ComputeRelevance(const SequenceForm& sf);

// Everything the solvers need about one game, built once. Not movable:
// sf points into game.
struct GameContext {
  explicit GameContext(GameTree g);
  GameContext(const GameContext&) = delete;
  GameContext& operator=(const GameContext&) = delete;

  GameTree game;
  SequenceForm sf;
  SeqFormMatrices m;
  RelevanceMap rel;
};

// Plain-text dump of F, f and U with exact rationals.
std::string DumpMatrices(const SequenceForm& sf, const SeqFormMatrices& m);

}  // namespace qpsse

#endif  // QPSSE_SEQUENCE_FORM_HPP_
