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

// SEFCE on trees with concurrent moves as one linear program over reach
// probabilities and follower values.

#ifndef STACKEL_SEFCE_LP_H_
#define STACKEL_SEFCE_LP_H_

#include <vector>

#include "stackel/game.h"
#include "stackel/lp.h"
#include "stackel/minmax.h"
#include "stackel/sefce_tree.h"

namespace stackel {

// Variable layout of BuildSefceLp: delta(s) is variable s, v2(s) is
// variable num_nodes + s.
inline int DeltaVar(NodeId s) { return static_cast<int>(s); }
inline int V2Var(const Game& game, NodeId s) {
  return static_cast<int>(game.num_nodes() + s);
}

// Turn-based follower nodes enter as one-row concurrent nodes and leader
// nodes as one-column ones. Throws GameError on DAGs.
LinearProgram BuildSefceLp(const Game& game, const MinmaxTable& mm);

struct FlowSolution {
  std::vector<Rational> delta;  // reach probability per node
  std::vector<Rational> v2;     // delta-weighted follower value per node
  Rational leader_value;
  CompactSefce compact;
  int pivots = 0;
};

FlowSolution SolveSefceConcurrent(const Game& game);

}  // namespace stackel

#endif  // STACKEL_SEFCE_LP_H_
