// Copyright 2026 The Stackel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON game files. The canonical form has keys in fixed order, nodes sorted
// by id (one per line) and every rational written as a string in lowest
// terms, so serialize(parse(serialize(g))) is byte-identical.

#ifndef STACKEL_GAME_IO_H_
#define STACKEL_GAME_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stackel/game.h"

namespace stackel {

class ParseError : public std::runtime_error {
 public:
  // `where` is a byte offset ("byte 17") or a JSON pointer ("/nodes/3/u").
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Parses the node table only; graph invariants are left to Validate().
Game ParseGame(std::string_view text);
std::string SerializeGame(const Game& game);

Game ReadGameFile(const std::string& path);
void WriteGameFile(const Game& game, const std::string& path);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string Fnv1aHex(std::string_view bytes);

}  // namespace stackel

#endif  // STACKEL_GAME_IO_H_
