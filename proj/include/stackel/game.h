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

// Two-player sequential games on trees and DAGs: node table, validation,
// classification, strategies and exact expected-utility evaluation.

#ifndef STACKEL_GAME_H_
#define STACKEL_GAME_H_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackel/rational.h"

namespace stackel {

using NodeId = std::uint32_t;

enum class NodeKind { kLeaf, kLeader, kFollower, kConcurrent, kChance };
enum class Player { kLeader, kFollower };
enum class GraphKind { kTree, kDag };
enum class Information { kTurnBased, kConcurrent };

std::string ToString(NodeKind kind);
std::string ToString(Player player);
std::string ToString(GraphKind graph);
std::string ToString(Information info);

// Thrown for malformed games or strategies handed to an operation.
class GameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Action {
  std::string label;
  NodeId child = 0;
  bool operator==(const Action&) const = default;
};

struct ChanceBranch {
  Rational probability;
  NodeId child = 0;
  bool operator==(const ChanceBranch&) const = default;
};

// One record of the node table. Which fields are meaningful depends on kind.
struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::kLeaf;
  Rational u1;                          // kLeaf: leader utility
  Rational u2;                          // kLeaf: follower utility
  std::vector<Action> actions;          // kLeader, kFollower
  std::vector<std::string> rows;        // kConcurrent: leader labels
  std::vector<std::string> cols;        // kConcurrent: follower labels
  std::vector<NodeId> cells;            // kConcurrent: row-major children
  std::vector<ChanceBranch> branches;   // kChance

  // Children in action order; concurrent cells row-major.
  std::vector<NodeId> Children() const;
  std::size_t NumChildren() const;
  NodeId Cell(std::size_t row, std::size_t col) const {
    return cells[row * cols.size() + col];
  }
  bool is_leaf() const { return kind == NodeKind::kLeaf; }
  // True where `player` chooses an action (concurrent nodes count for both).
  bool IsDecisionOf(Player player) const;
  // Number of actions `player` has here; 0 when the player does not act.
  std::size_t NumActionsOf(Player player) const;

  bool operator==(const Node&) const = default;
};

// Immutable node table. Construction does not validate; see Validate().
class Game {
 public:
  Game() = default;
  Game(GraphKind graph, NodeId root, std::vector<Node> nodes);

  GraphKind graph() const { return graph_; }
  NodeId root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t num_nodes() const { return nodes_.size(); }

  bool operator==(const Game&) const = default;

 private:
  GraphKind graph_ = GraphKind::kTree;
  NodeId root_ = 0;
  std::vector<Node> nodes_;
};

// Bottom-up construction helper; ids are assigned densely in call order.
class GameBuilder {
 public:
  NodeId Leaf(Rational u1, Rational u2);
  NodeId Leader(std::vector<Action> actions);
  NodeId Follower(std::vector<Action> actions);
  // Unlabelled variants label actions "a0", "a1", ...
  NodeId Leader(const std::vector<NodeId>& children);
  NodeId Follower(const std::vector<NodeId>& children);
  NodeId Leader(std::initializer_list<NodeId> children) {
    return Leader(std::vector<NodeId>(children));
  }
  NodeId Follower(std::initializer_list<NodeId> children) {
    return Follower(std::vector<NodeId>(children));
  }
  NodeId Chance(std::vector<ChanceBranch> branches);
  NodeId Concurrent(std::vector<std::string> rows, std::vector<std::string> cols,
                    std::vector<NodeId> cells);
  std::size_t size() const { return nodes_.size(); }
  Game Build(NodeId root, GraphKind graph = GraphKind::kTree) const;

 private:
  NodeId Add(Node node);
  std::vector<Node> nodes_;
};

enum class ViolationKind {
  kBadRoot,
  kIdMismatch,
  kDanglingChild,
  kEmptyNode,
  kBadConcurrentShape,
  kDuplicateLabel,
  kChanceNonPositive,
  kChanceSum,
  kCycle,
  kOrphan,
  kMultiParent,
};

std::string ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  NodeId node = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool Has(ViolationKind kind) const;
};

ValidationReport Validate(const Game& game);

// Throws GameError listing the violations if the game is not valid.
void CheckValid(const Game& game);

struct GameClass {
  GraphKind graph = GraphKind::kTree;
  Information info = Information::kTurnBased;
  bool chance = false;
  bool operator==(const GameClass&) const = default;
};

// Graph shape is structural: any node with two parents makes it a DAG.
// Throws GameError on games that fail validation.
GameClass Classify(const Game& game);

// Nodes reachable from `start` in topological order (Kahn, lowest id first).
std::vector<NodeId> TopologicalOrder(const Game& game, NodeId start);
std::vector<NodeId> TopologicalOrder(const Game& game);

// Same game with ids reassigned in breadth-first order from the root, so the
// root becomes node 0. Unreachable nodes are dropped.
Game RenumberFromRoot(const Game& game);

// Parent lists indexed by node id (one entry per incoming edge).
std::vector<std::vector<NodeId>> Parents(const Game& game);

struct PureStrategy {
  Player player = Player::kLeader;
  // Action index per decision node (row/column index at concurrent nodes).
  std::map<NodeId, int> choice;
  bool operator==(const PureStrategy&) const = default;
};

struct BehavioralStrategy {
  Player player = Player::kLeader;
  // Distribution over the node's actions for `player`.
  std::map<NodeId, std::vector<Rational>> mix;
  bool operator==(const BehavioralStrategy&) const = default;
};

BehavioralStrategy ToBehavioral(const Game& game, const PureStrategy& pure);

// Checks every distribution has the right arity, is non-negative and sums to
// exactly one. Throws GameError otherwise.
void CheckStrategy(const Game& game, const BehavioralStrategy& strategy);

struct ProfileValue {
  Rational u1;
  Rational u2;
  // Leaves reached with positive probability.
  std::map<NodeId, Rational> leaf_probs;
};

// Exact expected utilities of the subgame rooted at `start`. Strategies need
// entries only at nodes reached with positive probability; a missing entry
// there raises GameError naming the node.
ProfileValue EvaluateProfile(const Game& game, const BehavioralStrategy& leader,
                             const BehavioralStrategy& follower,
                             std::optional<NodeId> start = std::nullopt);

struct ResponseValue {
  PureStrategy follower;
  Rational u1;
  Rational u2;
};

// Follower pure best response to a leader behavioral strategy, with ties
// broken in the leader's favour (then towards `preferred`, then lowest
// action index). Values are computed for the subgame at `start` by backward
// induction; the leader strategy must cover every leader decision node
// reachable from `start`.
ResponseValue LeaderFavoringResponse(
    const Game& game, const BehavioralStrategy& leader,
    std::optional<NodeId> start = std::nullopt,
    const std::map<NodeId, int>* preferred = nullptr);

}  // namespace stackel

#endif  // STACKEL_GAME_H_
