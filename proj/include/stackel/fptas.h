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

// Approximate Stackelberg commitments (behavioral and pure) on turn-based
// trees with chance: dynamic programs over tables indexed by discretized
// leader utility holding the best follower utility that can be offered.

#ifndef STACKEL_FPTAS_H_
#define STACKEL_FPTAS_H_

#include <cstdint>
#include <map>
#include <vector>

#include "stackel/game.h"
#include "stackel/minmax.h"
#include "stackel/rational.h"

namespace stackel {

// A tree whose internal nodes have at most two children. A k-ary node
// becomes a right-leaning chain of k - 1 binary nodes of the same kind.
struct BinarizedGame {
  Game game;
  // Original node of every binarized node.
  std::vector<NodeId> origin;
  // Chain nodes of every original internal node, from the top down.
  std::map<NodeId, std::vector<NodeId>> chain;
};

// Throws GameError unless the game is a turn-based tree.
BinarizedGame Binarize(const Game& game);

// Node levels of a tree: a lone leaf has height 1.
int TreeLevels(const Game& game);

struct FptasParams {
  Rational epsilon;
  Rational shift;  // least leaf leader utility
  Rational spread; // U: greatest minus least leaf leader utility
  int levels = 1;  // H_T, node levels of the binarized tree
  Rational scale;  // D = epsilon / H_T
  std::int64_t n = 1;  // table length, ceil(U / D) + 1
};

// Entry k: the most follower utility that can be offered while securing
// leader utility at least shift + k * scale; -inf when none. Non-increasing.
using TradeoffTable = std::vector<ExtRational>;

// How an entry was reached: the child indices used and, at leader nodes in
// the behavioral case, the weight on the first child.
struct Witness {
  std::int64_t i = -1;  // index into the first child's table, -1 if unused
  std::int64_t j = -1;  // index into the second child's table, -1 if unused
  Rational p;           // weight on the first child
};

struct ApproxSolution {
  bool pure = false;
  BehavioralStrategy strategy{Player::kLeader, {}};  // on the original game
  Rational guaranteed_value;
  std::int64_t root_index = -1;
  FptasParams params;
  BinarizedGame binarized;
  MinmaxTable punishment;  // on the binarized game
  std::vector<TradeoffTable> tables;            // by binarized node
  std::vector<std::vector<Witness>> witnesses;  // by binarized node
};

// Throws std::invalid_argument when epsilon <= 0 and GameError on games
// that are not turn-based trees.
ApproxSolution FptasBehavioral(const Game& game, const Rational& epsilon);
ApproxSolution FptasPure(const Game& game, const Rational& epsilon);

// Leader strategy on the binarized game realizing entry k at `node`:
// recommended play below `node` along the witnesses, punishment elsewhere.
BehavioralStrategy ReconstructOnBinarized(const ApproxSolution& s, NodeId node,
                                          std::int64_t k);

// Folds chain mixes of a binarized leader strategy back onto the original
// leader nodes.
BehavioralStrategy ToOriginal(const BinarizedGame& b,
                              const BehavioralStrategy& s);

// Table combination rules, exposed for testing. `weight` is the chance
// probability of the first child.
TradeoffTable CombineLeaderMixed(const TradeoffTable& l, const TradeoffTable& r,
                                 std::vector<Witness>* w);
TradeoffTable CombineLeaderMixedReference(const TradeoffTable& l,
                                          const TradeoffTable& r);
TradeoffTable CombineLeaderPure(const TradeoffTable& l, const TradeoffTable& r,
                                std::vector<Witness>* w);
TradeoffTable CombineChance(const TradeoffTable& l, const TradeoffTable& r,
                            const Rational& weight, std::vector<Witness>* w);
TradeoffTable CombineChanceReference(const TradeoffTable& l,
                                     const TradeoffTable& r,
                                     const Rational& weight);
TradeoffTable CombineFollower(const TradeoffTable& l, const TradeoffTable& r,
                              const Rational& mu_l, const Rational& mu_r,
                              std::vector<Witness>* w);

}  // namespace stackel

#endif  // STACKEL_FPTAS_H_
