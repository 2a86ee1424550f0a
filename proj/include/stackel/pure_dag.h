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

// Pure-strategy commitment on turn-based DAGs without chance, via follower
// capacities.

#ifndef STACKEL_PURE_DAG_H_
#define STACKEL_PURE_DAG_H_

#include <vector>

#include "stackel/game.h"
#include "stackel/minmax.h"
#include "stackel/rational.h"

namespace stackel {

struct CapacityTable {
  // gamma[s]: the least follower utility an outcome below s must give for s
  // to be reachable. -inf at the root.
  std::vector<ExtRational> gamma;
};

struct PureCommitmentSolution {
  PureStrategy leader{Player::kLeader, {}};
  PureStrategy follower{Player::kFollower, {}};
  NodeId chosen_leaf = 0;
  Rational leader_value;
  Rational follower_value;
};

// Throws GameError unless the game is turn-based without chance.
CapacityTable ComputeCapacities(const Game& game, const MinmaxTable& mm);

// Leaves z with u2(z) >= gamma(z), in increasing id order.
std::vector<NodeId> PossibleOutcomes(const Game& game,
                                     const CapacityTable& caps);

PureCommitmentSolution SolvePureDag(const Game& game);

}  // namespace stackel

#endif  // STACKEL_PURE_DAG_H_
