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

// Stackelberg extensive-form correlated equilibria (SEFCE): the compact
// representation, incentive checks, expansion to an explicit distribution
// over pure profiles, and the hull-based solver for turn-based trees.

#ifndef STACKEL_SEFCE_TREE_H_
#define STACKEL_SEFCE_TREE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stackel/game.h"
#include "stackel/geometry.h"
#include "stackel/minmax.h"
#include "stackel/rational.h"

namespace stackel {

// Recommendations on the equilibrium path; every other node plays the
// punishment profile. A follower deviation anywhere switches both players to
// punishment for the rest of the game.
struct CompactSefce {
  std::set<NodeId> on_path;
  BehavioralStrategy leader{Player::kLeader, {}};      // on-path leader nodes
  BehavioralStrategy follower{Player::kFollower, {}};  // signals
  // On-path concurrent nodes: row-major distribution over cells.
  std::map<NodeId, std::vector<Rational>> joint;
  MinmaxTable punishment;
  Point value;  // (follower, leader) expected utilities
};

struct CompactValues {
  std::vector<Rational> u1;
  std::vector<Rational> u2;
  std::vector<Rational> reach;  // probability of visiting each node
  std::map<NodeId, Rational> leaf_probs;  // positive entries only
};

// Expected utilities of every subgame under the recommended play, and the
// induced reach probabilities from the root.
CompactValues EvaluateCompact(const Game& game, const CompactSefce& c);

struct DeviationViolation {
  NodeId node = 0;
  int recommended = 0;  // action or column index
  int deviation = 0;
  Rational gain;  // weighted threat minus weighted continuation, > 0
};

struct DeviationReport {
  std::vector<DeviationViolation> violations;
  // Structural problems, e.g. a missing or malformed recommendation.
  std::vector<std::string> errors;
  bool ok() const { return violations.empty() && errors.empty(); }
};

// At every follower or concurrent node reached with positive probability and
// every recommendation with positive probability, the expected continuation
// given the signal must be at least the follower's security value after
// each alternative action.
DeviationReport VerifyNoDeviation(const Game& game, const CompactSefce& c);

struct ProfileWeight {
  PureStrategy leader{Player::kLeader, {}};
  PureStrategy follower{Player::kFollower, {}};
  Rational probability;
};

struct ExplicitDistribution {
  std::vector<ProfileWeight> support;
};

// Product over nodes of the recommended or punishment mixes. Throws
// std::length_error when the game has more than `max_decision_nodes`
// decision nodes or the support would exceed `max_support` profiles.
ExplicitDistribution ExpandCompact(const Game& game, const CompactSefce& c,
                                   int max_decision_nodes = 14,
                                   std::size_t max_support = 1u << 20);

// Leaf distribution of an explicit distribution.
std::map<NodeId, Rational> LeafDistribution(const Game& game,
                                            const ExplicitDistribution& d);

struct SefceHulls {
  // hull[s]: achievable (follower, leader) points at s. At follower nodes
  // this merges the restricted children.
  std::vector<Hull2D> hull;
  // restricted[s][a] at follower nodes; nullopt when action a is unusable.
  std::map<NodeId, std::vector<std::optional<Hull2D>>> restricted;
  // Threshold used for restricted[s][a]; -inf for a lone action.
  std::map<NodeId, std::vector<ExtRational>> threshold;
};

// Throws GameError unless the game is a turn-based tree.
SefceHulls UpwardPass(const Game& game, const MinmaxTable& mm);

CompactSefce SolveSefceTree(const Game& game, SefceHulls* hulls = nullptr);

}  // namespace stackel

#endif  // STACKEL_SEFCE_TREE_H_
