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


// Plain-text game file format (see README).

#ifndef QPSSE_GAME_IO_HPP_
#define QPSSE_GAME_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>

#include "qpsse/game.hpp"

namespace qpsse {

// Throws ParseError on malformed text; GameError from validation.
GameDescription ParseGameDescription(std::string_view text);
GameTree ParseGame(std::string_view text);
GameTree LoadGameFile(const std::string& path);

GameDescription DescribeGame(const GameTree& g);
// Deterministic text, byte-identical for identical trees.
std::string WriteGame(const GameTree& g);

}  // namespace qpsse

#endif  // QPSSE_GAME_IO_HPP_
