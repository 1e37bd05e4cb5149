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


#include "qpsse/game_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace qpsse {
namespace {

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string Join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(sep);
    out += items[i];
  }
  return out;
}

int ParseId(const std::string& token, int line) {
  try {
    size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad node id '" + token + "'");
  }
}

}  // namespace

GameDescription ParseGameDescription(std::string_view text) {
  enum class Section { kNone, kPlayers, kNodes, kTerminals, kChance };
  Section section = Section::kNone;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::vector<NodeSpec> specs;
  std::map<int, size_t> by_id;
  struct ChanceEdge {
    int node;
    std::string action;
    Rational prob;
    int line;
  };
  std::vector<ChanceEdge> chance_edges;
  bool saw_header = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!saw_header) {
      if (tok.size() != 2 || tok[0] != "qpsse-game" || tok[1] != "v1") {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header 'qpsse-game v1'");
      }
      saw_header = true;
      continue;
    }
    if (tok.size() == 1 && (tok[0] == "players" || tok[0] == "nodes" ||
                            tok[0] == "terminals" || tok[0] == "chance")) {
      section = tok[0] == "players"     ? Section::kPlayers
                : tok[0] == "nodes"     ? Section::kNodes
                : tok[0] == "terminals" ? Section::kTerminals
                                        : Section::kChance;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no) + ": ";
    switch (section) {
      case Section::kNone:
        throw ParseError(where + "content before any section");
      case Section::kPlayers:
        if (tok != std::vector<std::string>{"leader", "follower"}) {
          throw ParseError(where + "players must be 'leader follower'");
        }
        break;
      case Section::kNodes: {
        if (tok.size() != 5) {
          throw ParseError(where + "node line needs: id owner infoset actions children");
        }
        NodeSpec spec;
        spec.id = ParseId(tok[0], line_no);
        auto owner = ParsePlayer(tok[1]);
        if (!owner) throw ParseError(where + "unknown owner '" + tok[1] + "'");
        spec.owner = *owner;
        spec.infoset = tok[2];
        spec.actions = Split(tok[3], ',');
        for (const std::string& c : Split(tok[4], ',')) {
          spec.children.push_back(ParseId(c, line_no));
        }
        if (spec.owner == PlayerId::kChance) {
          spec.chance_probs.assign(spec.actions.size(), Rational(-1));
        }
        by_id[spec.id] = specs.size();
        specs.push_back(std::move(spec));
        break;
      }
      case Section::kTerminals: {
        if (tok.size() != 3) {
          throw ParseError(where + "terminal line needs: id leader follower");
        }
        NodeSpec spec;
        spec.id = ParseId(tok[0], line_no);
        spec.terminal = true;
        spec.leader_payoff = ParseRational(tok[1]);
        spec.follower_payoff = ParseRational(tok[2]);
        by_id[spec.id] = specs.size();
        specs.push_back(std::move(spec));
        break;
      }
      case Section::kChance:
        if (tok.size() != 3) {
          throw ParseError(where + "chance line needs: node action probability");
        }
        chance_edges.push_back(
            {ParseId(tok[0], line_no), tok[1], ParseRational(tok[2]), line_no});
        break;
    }
  }
  if (!saw_header) throw ParseError("empty game file");

  for (const ChanceEdge& e : chance_edges) {
    const std::string where = "line " + std::to_string(e.line) + ": ";
    auto it = by_id.find(e.node);
    if (it == by_id.end() || specs[it->second].terminal ||
        specs[it->second].owner != PlayerId::kChance) {
      throw ParseError(where + "chance edge on a non-chance node");
    }
    NodeSpec& spec = specs[it->second];
    bool found = false;
    for (size_t a = 0; a < spec.actions.size(); ++a) {
      if (spec.actions[a] == e.action) {
        spec.chance_probs[a] = e.prob;
        found = true;
      }
    }
    if (!found) throw ParseError(where + "unknown chance action '" + e.action + "'");
  }
  for (const NodeSpec& spec : specs) {
    for (const Rational& p : spec.chance_probs) {
      if (p == -1) {
        throw ParseError("chance node " + std::to_string(spec.id) +
                         " is missing an edge probability");
      }
    }
  }
  return GameDescription{std::move(specs)};
}

GameTree ParseGame(std::string_view text) {
  return BuildGame(ParseGameDescription(text));
}

GameTree LoadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGame(buffer.str());
}

GameDescription DescribeGame(const GameTree& g) {
  GameDescription d;
  for (const Node& node : g.nodes()) {
    NodeSpec spec;
    spec.id = node.id;
    spec.terminal = node.terminal;
    spec.leader_payoff = node.leader_payoff;
    spec.follower_payoff = node.follower_payoff;
    if (!node.terminal) {
      spec.owner = node.owner;
      spec.infoset = node.infoset >= 0 ? g.infoset(node.infoset).label : "-";
      spec.actions = node.actions;
      spec.children = node.children;
      spec.chance_probs = node.chance_probs;
    }
    d.nodes.push_back(std::move(spec));
  }
  return d;
}

std::string WriteGame(const GameTree& g) {
  std::ostringstream out;
  out << "qpsse-game v1\nplayers\nleader follower\nnodes\n";
  for (const Node& node : g.nodes()) {
    if (node.terminal) continue;
    std::vector<std::string> children;
    for (int c : node.children) children.push_back(std::to_string(c));
    out << node.id << ' ' << PlayerName(node.owner) << ' '
        << (node.infoset >= 0 ? g.infoset(node.infoset).label : "-") << ' '
        << Join(node.actions, ',') << ' ' << Join(children, ',') << '\n';
  }
  out << "terminals\n";
  for (const Node& node : g.nodes()) {
    if (!node.terminal) continue;
    out << node.id << ' ' << ToString(node.leader_payoff) << ' '
        << ToString(node.follower_payoff) << '\n';
  }
  if (g.HasChance()) {
    out << "chance\n";
    for (const Node& node : g.nodes()) {
      if (node.terminal || node.owner != PlayerId::kChance) continue;
      for (size_t a = 0; a < node.actions.size(); ++a) {
        out << node.id << ' ' << node.actions[a] << ' '
            << ToString(node.chance_probs[a]) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace qpsse
