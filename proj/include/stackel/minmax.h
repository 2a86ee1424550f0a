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

// Follower security values and the leader's punishment strategy.

#ifndef STACKEL_MINMAX_H_
#define STACKEL_MINMAX_H_

#include <vector>

#include "stackel/game.h"
#include "stackel/rational.h"

namespace stackel {

using Matrix = std::vector<std::vector<Rational>>;

struct MatrixGameSolution {
  Rational value;
  std::vector<Rational> row_mix;
  std::vector<Rational> col_mix;
};

// Zero-sum matrix game where the row player minimizes and the column player
// maximizes the entries. Solved exactly by two LPs.
MatrixGameSolution SolveMatrixGame(const Matrix& m);

struct MinmaxTable {
  // mu[s]: the follower's security value in the subgame at s.
  std::vector<Rational> mu;
  // Leader minimizing strategy at every leader and concurrent node.
  BehavioralStrategy punish_leader{Player::kLeader, {}};
  // Follower best response to punish_leader at every follower and
  // concurrent node.
  BehavioralStrategy punish_follower{Player::kFollower, {}};
};

// Backward induction in reverse topological order; ties at turn-based nodes
// go to the lowest child id. The game must be valid.
MinmaxTable ComputeMinmax(const Game& game);

}  // namespace stackel

#endif  // STACKEL_MINMAX_H_
