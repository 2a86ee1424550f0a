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

#include "stackel/game.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace stackel {

std::string ToString(NodeKind kind) {
  switch (kind) {
    case NodeKind::kLeaf:
      return "leaf";
    case NodeKind::kLeader:
      return "leader";
    case NodeKind::kFollower:
      return "follower";
    case NodeKind::kConcurrent:
      return "concurrent";
    case NodeKind::kChance:
      return "chance";
  }
  return "?";
}

std::string ToString(Player player) {
  return player == Player::kLeader ? "leader" : "follower";
}

std::string ToString(GraphKind graph) {
  return graph == GraphKind::kTree ? "tree" : "dag";
}

std::string ToString(Information info) {
  return info == Information::kTurnBased ? "turn-based" : "concurrent";
}

std::string ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadRoot:
      return "bad-root";
    case ViolationKind::kIdMismatch:
      return "id-mismatch";
    case ViolationKind::kDanglingChild:
      return "dangling-child";
    case ViolationKind::kEmptyNode:
      return "empty-node";
    case ViolationKind::kBadConcurrentShape:
      return "bad-concurrent-shape";
    case ViolationKind::kDuplicateLabel:
      return "duplicate-label";
    case ViolationKind::kChanceNonPositive:
      return "chance-non-positive";
    case ViolationKind::kChanceSum:
      return "chance-sum";
    case ViolationKind::kCycle:
      return "cycle";
    case ViolationKind::kOrphan:
      return "orphan";
    case ViolationKind::kMultiParent:
      return "multi-parent";
  }
  return "?";
}

std::vector<NodeId> Node::Children() const {
  std::vector<NodeId> out;
  switch (kind) {
    case NodeKind::kLeaf:
      break;
    case NodeKind::kLeader:
    case NodeKind::kFollower:
      for (const Action& a : actions) out.push_back(a.child);
      break;
    case NodeKind::kConcurrent:
      out = cells;
      break;
    case NodeKind::kChance:
      for (const ChanceBranch& b : branches) out.push_back(b.child);
      break;
  }
  return out;
}

std::size_t Node::NumChildren() const {
  switch (kind) {
    case NodeKind::kLeaf:
      return 0;
    case NodeKind::kLeader:
    case NodeKind::kFollower:
      return actions.size();
    case NodeKind::kConcurrent:
      return cells.size();
    case NodeKind::kChance:
      return branches.size();
  }
  return 0;
}

bool Node::IsDecisionOf(Player player) const {
  if (kind == NodeKind::kConcurrent) return true;
  return player == Player::kLeader ? kind == NodeKind::kLeader
                                   : kind == NodeKind::kFollower;
}

std::size_t Node::NumActionsOf(Player player) const {
  if (kind == NodeKind::kConcurrent) {
    return player == Player::kLeader ? rows.size() : cols.size();
  }
  return IsDecisionOf(player) ? actions.size() : 0;
}

Game::Game(GraphKind graph, NodeId root, std::vector<Node> nodes)
    : graph_(graph), root_(root), nodes_(std::move(nodes)) {}

NodeId GameBuilder::Add(Node node) {
  node.id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

NodeId GameBuilder::Leaf(Rational u1, Rational u2) {
  Node n;
  n.kind = NodeKind::kLeaf;
  n.u1 = std::move(u1);
  n.u2 = std::move(u2);
  return Add(std::move(n));
}

NodeId GameBuilder::Leader(std::vector<Action> actions) {
  Node n;
  n.kind = NodeKind::kLeader;
  n.actions = std::move(actions);
  return Add(std::move(n));
}

NodeId GameBuilder::Follower(std::vector<Action> actions) {
  Node n;
  n.kind = NodeKind::kFollower;
  n.actions = std::move(actions);
  return Add(std::move(n));
}

namespace {
std::vector<Action> Label(const std::vector<NodeId>& children) {
  std::vector<Action> out;
  for (std::size_t i = 0; i < children.size(); ++i) {
    out.push_back({"a" + std::to_string(i), children[i]});
  }
  return out;
}
}  // namespace

NodeId GameBuilder::Leader(const std::vector<NodeId>& children) {
  return Leader(Label(children));
}

NodeId GameBuilder::Follower(const std::vector<NodeId>& children) {
  return Follower(Label(children));
}

NodeId GameBuilder::Chance(std::vector<ChanceBranch> branches) {
  Node n;
  n.kind = NodeKind::kChance;
  n.branches = std::move(branches);
  return Add(std::move(n));
}

NodeId GameBuilder::Concurrent(std::vector<std::string> rows,
                               std::vector<std::string> cols,
                               std::vector<NodeId> cells) {
  Node n;
  n.kind = NodeKind::kConcurrent;
  n.rows = std::move(rows);
  n.cols = std::move(cols);
  n.cells = std::move(cells);
  return Add(std::move(n));
}

Game GameBuilder::Build(NodeId root, GraphKind graph) const {
  return Game(graph, root, nodes_);
}

bool ValidationReport::Has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

namespace {

void CheckLabels(const Node& node, const std::vector<std::string>& labels,
                 const char* what, ValidationReport& report) {
  std::set<std::string> seen;
  for (const std::string& l : labels) {
    if (!seen.insert(l).second) {
      report.violations.push_back(
          {ViolationKind::kDuplicateLabel, node.id,
           "node " + std::to_string(node.id) + " repeats " + what +
               " label \"" + l + "\""});
    }
  }
}

}  // namespace

ValidationReport Validate(const Game& game) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, NodeId id, std::string msg) {
    report.violations.push_back({kind, id, std::move(msg)});
  };
  const std::size_t n = game.num_nodes();
  if (n == 0 || game.root() >= n) {
    add(ViolationKind::kBadRoot, game.root(),
        "root " + std::to_string(game.root()) + " is not a node id");
    return report;
  }
  bool edges_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = game.nodes()[i];
    const std::string where = "node " + std::to_string(i);
    if (node.id != i) {
      add(ViolationKind::kIdMismatch, static_cast<NodeId>(i),
          where + " carries id " + std::to_string(node.id));
    }
    switch (node.kind) {
      case NodeKind::kLeaf:
        break;
      case NodeKind::kLeader:
      case NodeKind::kFollower: {
        if (node.actions.empty()) {
          add(ViolationKind::kEmptyNode, node.id, where + " has no actions");
        }
        std::vector<std::string> labels;
        for (const Action& a : node.actions) labels.push_back(a.label);
        CheckLabels(node, labels, "action", report);
        break;
      }
      case NodeKind::kConcurrent:
        if (node.rows.empty() || node.cols.empty()) {
          add(ViolationKind::kEmptyNode, node.id,
              where + " has an empty action set");
        }
        if (node.cells.size() != node.rows.size() * node.cols.size()) {
          add(ViolationKind::kBadConcurrentShape, node.id,
              where + " has " + std::to_string(node.cells.size()) +
                  " cells for a " + std::to_string(node.rows.size()) + "x" +
                  std::to_string(node.cols.size()) + " matrix");
          edges_ok = false;
        }
        CheckLabels(node, node.rows, "row", report);
        CheckLabels(node, node.cols, "column", report);
        break;
      case NodeKind::kChance: {
        if (node.branches.empty()) {
          add(ViolationKind::kEmptyNode, node.id, where + " has no branches");
          break;
        }
        Rational sum;
        for (const ChanceBranch& b : node.branches) {
          if (b.probability.sign() <= 0) {
            add(ViolationKind::kChanceNonPositive, node.id,
                where + " has branch probability " + b.probability.ToString());
          }
          sum += b.probability;
        }
        if (sum != Rational(1)) {
          add(ViolationKind::kChanceSum, node.id,
              where + " branch probabilities sum to " + sum.ToString() +
                  ", not 1");
        }
        break;
      }
    }
    for (NodeId c : node.Children()) {
      if (c >= n) {
        add(ViolationKind::kDanglingChild, node.id,
            where + " points to missing node " + std::to_string(c));
        edges_ok = false;
      }
    }
  }
  if (!edges_ok) return report;

  // Parent counts, reachability and cycles.
  std::vector<int> parents(n, 0);
  for (const Node& node : game.nodes()) {
    for (NodeId c : node.Children()) ++parents[c];
  }
  enum Color : char { kWhite, kGray, kBlack };
  std::vector<Color> color(n, kWhite);
  std::vector<bool> reached(n, false);
  auto dfs = [&](NodeId start, bool from_root) {
    if (color[start] != kWhite) return;
    std::vector<std::pair<NodeId, std::size_t>> stack{{start, 0}};
    color[start] = kGray;
    if (from_root) reached[start] = true;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      std::vector<NodeId> kids = game.node(id).Children();
      if (next == kids.size()) {
        color[id] = kBlack;
        stack.pop_back();
        continue;
      }
      NodeId c = kids[next++];
      if (from_root) reached[c] = true;
      if (color[c] == kGray) {
        add(ViolationKind::kCycle, id,
            "edge " + std::to_string(id) + " -> " + std::to_string(c) +
                " closes a cycle");
      } else if (color[c] == kWhite) {
        color[c] = kGray;
        stack.push_back({c, 0});
      }
    }
  };
  dfs(game.root(), true);
  for (std::size_t i = 0; i < n; ++i) dfs(static_cast<NodeId>(i), false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reached[i]) {
      add(ViolationKind::kOrphan, static_cast<NodeId>(i),
          "node " + std::to_string(i) + " is unreachable from the root");
    }
  }
  if (game.graph() == GraphKind::kTree) {
    for (std::size_t i = 0; i < n; ++i) {
      if (parents[i] > 1) {
        add(ViolationKind::kMultiParent, static_cast<NodeId>(i),
            "node " + std::to_string(i) + " has " +
                std::to_string(parents[i]) + " parents in a declared tree");
      }
    }
  }
  return report;
}

void CheckValid(const Game& game) {
  ValidationReport report = Validate(game);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid game:";
  for (const Violation& v : report.violations) msg << "\n  " << v.message;
  throw GameError(msg.str());
}

GameClass Classify(const Game& game) {
  CheckValid(game);
  GameClass out;
  std::vector<int> parents(game.num_nodes(), 0);
  for (const Node& node : game.nodes()) {
    if (node.kind == NodeKind::kConcurrent) out.info = Information::kConcurrent;
    if (node.kind == NodeKind::kChance) out.chance = true;
    for (NodeId c : node.Children()) {
      if (++parents[c] > 1) out.graph = GraphKind::kDag;
    }
  }
  return out;
}

std::vector<std::vector<NodeId>> Parents(const Game& game) {
  std::vector<std::vector<NodeId>> out(game.num_nodes());
  for (const Node& node : game.nodes()) {
    for (NodeId c : node.Children()) out[c].push_back(node.id);
  }
  return out;
}

std::vector<NodeId> TopologicalOrder(const Game& game, NodeId start) {
  const std::size_t n = game.num_nodes();
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{start};
  seen[start] = true;
  std::vector<int> indegree(n, 0);
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    for (NodeId c : game.node(id).Children()) {
      ++indegree[c];
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  ready.push(start);
  std::vector<NodeId> order;
  while (!ready.empty()) {
    NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId c : game.node(id).Children()) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  return order;
}

std::vector<NodeId> TopologicalOrder(const Game& game) {
  return TopologicalOrder(game, game.root());
}

Game RenumberFromRoot(const Game& game) {
  const std::size_t n = game.num_nodes();
  std::vector<std::int64_t> id(n, -1);
  std::vector<NodeId> order{game.root()};
  id[game.root()] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId c : game.node(order[head]).Children()) {
      if (id[c] < 0) {
        id[c] = static_cast<std::int64_t>(order.size());
        order.push_back(c);
      }
    }
  }
  std::vector<Node> nodes;
  for (NodeId old : order) {
    Node node = game.node(old);
    node.id = static_cast<NodeId>(id[old]);
    for (Action& a : node.actions) a.child = static_cast<NodeId>(id[a.child]);
    for (NodeId& c : node.cells) c = static_cast<NodeId>(id[c]);
    for (ChanceBranch& b : node.branches) {
      b.child = static_cast<NodeId>(id[b.child]);
    }
    nodes.push_back(std::move(node));
  }
  return Game(game.graph(), 0, std::move(nodes));
}

BehavioralStrategy ToBehavioral(const Game& game, const PureStrategy& pure) {
  BehavioralStrategy out;
  out.player = pure.player;
  for (const auto& [id, a] : pure.choice) {
    std::vector<Rational> mix(game.node(id).NumActionsOf(pure.player));
    if (a < 0 || static_cast<std::size_t>(a) >= mix.size()) {
      throw GameError("pure strategy picks action " + std::to_string(a) +
                      " at node " + std::to_string(id) + " out of range");
    }
    mix[a] = 1;
    out.mix[id] = std::move(mix);
  }
  return out;
}

void CheckStrategy(const Game& game, const BehavioralStrategy& strategy) {
  for (const auto& [id, mix] : strategy.mix) {
    const std::string where =
        ToString(strategy.player) + " strategy at node " + std::to_string(id);
    if (id >= game.num_nodes()) throw GameError(where + ": no such node");
    std::size_t arity = game.node(id).NumActionsOf(strategy.player);
    if (arity == 0) throw GameError(where + ": player does not act there");
    if (mix.size() != arity) {
      throw GameError(where + ": " + std::to_string(mix.size()) +
                      " probabilities for " + std::to_string(arity) +
                      " actions");
    }
    Rational sum;
    for (const Rational& p : mix) {
      if (p.sign() < 0) throw GameError(where + ": negative probability");
      sum += p;
    }
    if (sum != Rational(1)) {
      throw GameError(where + ": probabilities sum to " + sum.ToString());
    }
  }
}

namespace {

const std::vector<Rational>& MixAt(const BehavioralStrategy& s, NodeId id) {
  auto it = s.mix.find(id);
  if (it == s.mix.end()) {
    throw GameError(ToString(s.player) + " strategy has no entry for node " +
                    std::to_string(id));
  }
  return it->second;
}

}  // namespace

ProfileValue EvaluateProfile(const Game& game, const BehavioralStrategy& leader,
                             const BehavioralStrategy& follower,
                             std::optional<NodeId> start) {
  const NodeId from = start.value_or(game.root());
  std::vector<Rational> reach(game.num_nodes());
  reach[from] = 1;
  ProfileValue out;
  for (NodeId id : TopologicalOrder(game, from)) {
    const Rational& p = reach[id];
    if (p.is_zero()) continue;
    const Node& node = game.node(id);
    switch (node.kind) {
      case NodeKind::kLeaf:
        out.u1 += p * node.u1;
        out.u2 += p * node.u2;
        out.leaf_probs[id] += p;
        break;
      case NodeKind::kLeader:
      case NodeKind::kFollower: {
        const auto& mix = MixAt(
            node.kind == NodeKind::kLeader ? leader : follower, id);
        if (mix.size() != node.actions.size()) {
          throw GameError("strategy arity mismatch at node " +
                          std::to_string(id));
        }
        for (std::size_t a = 0; a < mix.size(); ++a) {
          if (!mix[a].is_zero()) reach[node.actions[a].child] += p * mix[a];
        }
        break;
      }
      case NodeKind::kConcurrent: {
        const auto& rows = MixAt(leader, id);
        const auto& cols = MixAt(follower, id);
        if (rows.size() != node.rows.size() ||
            cols.size() != node.cols.size()) {
          throw GameError("strategy arity mismatch at node " +
                          std::to_string(id));
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r].is_zero()) continue;
          for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].is_zero()) continue;
            reach[node.Cell(r, c)] += p * rows[r] * cols[c];
          }
        }
        break;
      }
      case NodeKind::kChance:
        for (const ChanceBranch& b : node.branches) {
          reach[b.child] += p * b.probability;
        }
        break;
    }
  }
  return out;
}

ResponseValue LeaderFavoringResponse(const Game& game,
                                     const BehavioralStrategy& leader,
                                     std::optional<NodeId> start,
                                     const std::map<NodeId, int>* preferred) {
  const NodeId from = start.value_or(game.root());
  std::vector<NodeId> order = TopologicalOrder(game, from);
  std::vector<Rational> v1(game.num_nodes());
  std::vector<Rational> v2(game.num_nodes());
  ResponseValue out;
  out.follower.player = Player::kFollower;
  // Picks the (u2, u1)-maximal option, then the preferred one, then lowest.
  auto pick = [&](NodeId id, const std::vector<Rational>& x1,
                  const std::vector<Rational>& x2) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < x1.size(); ++a) {
      if (x2[a] > x2[best] || (x2[a] == x2[best] && x1[a] > x1[best])) {
        best = a;
      }
    }
    if (preferred != nullptr) {
      auto it = preferred->find(id);
      if (it != preferred->end()) {
        std::size_t a = static_cast<std::size_t>(it->second);
        if (a < x1.size() && x1[a] == x1[best] && x2[a] == x2[best]) best = a;
      }
    }
    return best;
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& node = game.node(*it);
    switch (node.kind) {
      case NodeKind::kLeaf:
        v1[node.id] = node.u1;
        v2[node.id] = node.u2;
        break;
      case NodeKind::kLeader: {
        const auto& mix = MixAt(leader, node.id);
        Rational a1, a2;
        for (std::size_t a = 0; a < mix.size(); ++a) {
          if (mix[a].is_zero()) continue;
          a1 += mix[a] * v1[node.actions[a].child];
          a2 += mix[a] * v2[node.actions[a].child];
        }
        v1[node.id] = a1;
        v2[node.id] = a2;
        break;
      }
      case NodeKind::kFollower: {
        std::vector<Rational> x1, x2;
        for (const Action& a : node.actions) {
          x1.push_back(v1[a.child]);
          x2.push_back(v2[a.child]);
        }
        std::size_t best = pick(node.id, x1, x2);
        out.follower.choice[node.id] = static_cast<int>(best);
        v1[node.id] = x1[best];
        v2[node.id] = x2[best];
        break;
      }
      case NodeKind::kConcurrent: {
        const auto& rows = MixAt(leader, node.id);
        std::vector<Rational> x1(node.cols.size()), x2(node.cols.size());
        for (std::size_t c = 0; c < node.cols.size(); ++c) {
          for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].is_zero()) continue;
            x1[c] += rows[r] * v1[node.Cell(r, c)];
            x2[c] += rows[r] * v2[node.Cell(r, c)];
          }
        }
        std::size_t best = pick(node.id, x1, x2);
        out.follower.choice[node.id] = static_cast<int>(best);
        v1[node.id] = x1[best];
        v2[node.id] = x2[best];
        break;
      }
      case NodeKind::kChance: {
        Rational a1, a2;
        for (const ChanceBranch& b : node.branches) {
          a1 += b.probability * v1[b.child];
          a2 += b.probability * v2[b.child];
        }
        v1[node.id] = a1;
        v2[node.id] = a2;
        break;
      }
    }
  }
  out.u1 = v1[from];
  out.u2 = v2[from];
  return out;
}

}  // namespace stackel
