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

// CSV and SVG renderings of SEFCE hulls.

#ifndef STACKEL_HULL_IO_H_
#define STACKEL_HULL_IO_H_

#include <string>
#include <vector>

#include "stackel/game.h"
#include "stackel/geometry.h"
#include "stackel/sefce_tree.h"

namespace stackel {

enum class HullFormat { kCsv, kSvg };

// "x,y" header then one exact row per vertex in canonical order.
std::string HullCsv(const Hull2D& h);

// Axes labelled u2 (horizontal) and u1; each entry of `cuts` is drawn as a
// vertical dashed line.
std::string HullSvg(const Hull2D& h, const std::vector<Rational>& cuts,
                    const std::string& title);

// Writes node_<id>.csv or .svg for every node of a turn-based tree and
// returns the paths. The cut drawn for a node is the threshold its follower
// parent applied to it. Throws std::runtime_error naming the path on write
// failure.
std::vector<std::string> EmitHulls(const Game& game, const SefceHulls& hulls,
                                   const std::string& dir, HullFormat format);

}  // namespace stackel

#endif  // STACKEL_HULL_IO_H_
