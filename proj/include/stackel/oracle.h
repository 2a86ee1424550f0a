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

// Exhaustive reference solvers for small games.

#ifndef STACKEL_ORACLE_H_
#define STACKEL_ORACLE_H_

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "stackel/game.h"
#include "stackel/geometry.h"
#include "stackel/pure_dag.h"
#include "stackel/rational.h"
#include "stackel/sefce_tree.h"

namespace stackel {

struct OracleBudget {
  int max_decision_nodes = 14;
  std::uint64_t max_pure_profiles = std::uint64_t{1} << 20;
  // Candidate points the grid oracle may generate.
  std::uint64_t max_grid_work = std::uint64_t{1} << 26;

  // Defaults, with max_decision_nodes overridden by STACKEL_BUDGET_NODES.
  static OracleBudget FromEnv();
};

// Refusal to run an oracle over budget; what() carries the size estimate.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Leader, follower and concurrent nodes.
int CountDecisionNodes(const Game& game);

// Every leader pure strategy against the leader-favoring best response.
// Among optimal strategies: larger follower value, then the first in
// lexicographic order of (choice at lowest leader id, ...). Turn-based,
// chance allowed.
PureCommitmentSolution BruteForcePure(const Game& game,
                                      const OracleBudget& budget = {});

// Leaves reached with probability 1 by some leader pure strategy and some
// follower best response (any tie-breaking). No chance.
std::set<NodeId> PureReachableLeaves(const Game& game,
                                     const OracleBudget& budget = {});

struct SefceOracleResult {
  Rational value;
  // Identical LP columns are merged; each support entry is one
  // representative reduced profile (actions at reached nodes only).
  ExplicitDistribution dist;
  std::size_t profiles = 0;  // reduced pure profiles enumerated
  std::size_t columns = 0;   // distinct LP columns
};

// LP over distributions on reduced pure profiles maximizing the leader's
// utility, subject to the follower never gaining from leaving a
// recommendation when the deviation is answered by punishment. Trees,
// turn-based or concurrent, chance allowed.
SefceOracleResult BruteForceSefce(const Game& game,
                                  const OracleBudget& budget = {});

struct GridFrontiers {
  Rational value;
  // Per node: non-dominated (follower, leader) utility pairs reachable by
  // grid strategies in the subtree, sorted by decreasing follower utility.
  std::vector<std::vector<Point>> frontier;
  // Per node: lowest follower utility the leader can force on the grid.
  std::vector<Rational> threat;
  std::uint64_t work = 0;
};

// Best leader value over behavioral strategies whose mixes all lie on
// {0, 1/g, ..., 1}, against the leader-favoring best response. Trees,
// turn-based or concurrent, chance allowed.
GridFrontiers GridBehavioralFrontiers(const Game& game, int g,
                                      const OracleBudget& budget = {});
Rational GridBehavioral(const Game& game, int g, const OracleBudget& budget = {});

// Exact behavioral value of a knapsack reduction game: uniform root mix and
// one pure row per item subgame, all 2^N choices. Throws GameError when the
// game does not have the reduction shape.
Rational ReductionExactBehavioral(const Game& game,
                                  const OracleBudget& budget = {});

}  // namespace stackel

#endif  // STACKEL_ORACLE_H_
