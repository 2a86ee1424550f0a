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

#include "stackel/sefce_tree.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace stackel {
namespace {

struct Move {
  NodeId child;
  Rational probability;
  int row = 0;  // action index, or row at concurrent nodes
  int col = 0;
};

const std::vector<Rational>& MixAt(const BehavioralStrategy& s, NodeId id,
                                   std::size_t arity) {
  auto it = s.mix.find(id);
  if (it == s.mix.end()) {
    throw GameError("no " + ToString(s.player) + " mix at node " +
                    std::to_string(id));
  }
  if (it->second.size() != arity) {
    throw GameError("mix of wrong arity at node " + std::to_string(id));
  }
  return it->second;
}

void CheckDistribution(const std::vector<Rational>& d, NodeId id) {
  Rational total;
  for (const Rational& x : d) {
    if (x.sign() < 0) throw GameError("negative probability at node " + std::to_string(id));
    total += x;
  }
  if (total != Rational(1)) {
    throw GameError("probabilities at node " + std::to_string(id) +
                    " sum to " + total.ToString());
  }
}

// Positive-probability moves out of a non-leaf node.
std::vector<Move> Moves(const Node& n, const CompactSefce& c) {
  std::vector<Move> out;
  const bool on = c.on_path.count(n.id) > 0;
  switch (n.kind) {
    case NodeKind::kLeaf:
      break;
    case NodeKind::kLeader:
    case NodeKind::kFollower: {
      const BehavioralStrategy& s =
          n.kind == NodeKind::kLeader
              ? (on ? c.leader : c.punishment.punish_leader)
              : (on ? c.follower : c.punishment.punish_follower);
      const std::vector<Rational>& mix = MixAt(s, n.id, n.actions.size());
      CheckDistribution(mix, n.id);
      for (std::size_t a = 0; a < mix.size(); ++a) {
        if (mix[a].sign() > 0) {
          out.push_back({n.actions[a].child, mix[a], static_cast<int>(a), 0});
        }
      }
      break;
    }
    case NodeKind::kConcurrent: {
      const std::size_t rows = n.rows.size(), cols = n.cols.size();
      std::vector<Rational> cell(rows * cols);
      if (on) {
        auto it = c.joint.find(n.id);
        if (it == c.joint.end() || it->second.size() != cell.size()) {
          throw GameError("no joint cell distribution at node " +
                          std::to_string(n.id));
        }
        cell = it->second;
      } else {
        const auto& r = MixAt(c.punishment.punish_leader, n.id, rows);
        const auto& k = MixAt(c.punishment.punish_follower, n.id, cols);
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < cols; ++j) cell[i * cols + j] = r[i] * k[j];
        }
      }
      CheckDistribution(cell, n.id);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          const Rational& p = cell[i * cols + j];
          if (p.sign() > 0) {
            out.push_back({n.Cell(i, j), p, static_cast<int>(i),
                           static_cast<int>(j)});
          }
        }
      }
      break;
    }
    case NodeKind::kChance:
      for (std::size_t a = 0; a < n.branches.size(); ++a) {
        out.push_back({n.branches[a].child, n.branches[a].probability,
                       static_cast<int>(a), 0});
      }
      break;
  }
  return out;
}

}  // namespace

CompactValues EvaluateCompact(const Game& game, const CompactSefce& c) {
  const std::vector<NodeId> order = TopologicalOrder(game);
  CompactValues v;
  v.u1.resize(game.num_nodes());
  v.u2.resize(game.num_nodes());
  v.reach.resize(game.num_nodes());
  std::vector<std::vector<Move>> moves(game.num_nodes());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = game.node(*it);
    if (n.is_leaf()) {
      v.u1[n.id] = n.u1;
      v.u2[n.id] = n.u2;
      continue;
    }
    moves[n.id] = Moves(n, c);
    for (const Move& m : moves[n.id]) {
      v.u1[n.id] += m.probability * v.u1[m.child];
      v.u2[n.id] += m.probability * v.u2[m.child];
    }
  }
  v.reach[game.root()] = 1;
  for (NodeId id : order) {
    if (v.reach[id].is_zero()) continue;
    if (game.node(id).is_leaf()) v.leaf_probs[id] = v.reach[id];
    for (const Move& m : moves[id]) v.reach[m.child] += v.reach[id] * m.probability;
  }
  return v;
}

DeviationReport VerifyNoDeviation(const Game& game, const CompactSefce& c) {
  DeviationReport report;
  CompactValues v;
  try {
    v = EvaluateCompact(game, c);
  } catch (const GameError& e) {
    report.errors.push_back(e.what());
    return report;
  }
  const std::vector<Rational>& mu = c.punishment.mu;
  for (const Node& n : game.nodes()) {
    if (v.reach[n.id].is_zero()) continue;
    if (n.kind == NodeKind::kFollower) {
      for (const Move& m : Moves(n, c)) {
        for (std::size_t d = 0; d < n.actions.size(); ++d) {
          if (static_cast<int>(d) == m.row) continue;
          const Rational& threat = mu[n.actions[d].child];
          if (threat > v.u2[m.child]) {
            report.violations.push_back(
                {n.id, m.row, static_cast<int>(d), threat - v.u2[m.child]});
          }
        }
      }
    } else if (n.kind == NodeKind::kConcurrent) {
      const std::size_t cols = n.cols.size();
      std::vector<Rational> cont(cols);
      std::vector<std::vector<Rational>> threat(cols, std::vector<Rational>(cols));
      std::vector<bool> used(cols, false);
      for (const Move& m : Moves(n, c)) {
        used[m.col] = true;
        cont[m.col] += m.probability * v.u2[m.child];
        for (std::size_t d = 0; d < cols; ++d) {
          threat[m.col][d] += m.probability * mu[n.Cell(m.row, d)];
        }
      }
      for (std::size_t k = 0; k < cols; ++k) {
        if (!used[k]) continue;
        for (std::size_t d = 0; d < cols; ++d) {
          if (d != k && threat[k][d] > cont[k]) {
            report.violations.push_back({n.id, static_cast<int>(k),
                                         static_cast<int>(d),
                                         threat[k][d] - cont[k]});
          }
        }
      }
    }
  }
  return report;
}

ExplicitDistribution ExpandCompact(const Game& game, const CompactSefce& c,
                                   int max_decision_nodes,
                                   std::size_t max_support) {
  std::vector<NodeId> decision;
  for (const Node& n : game.nodes()) {
    if (n.kind == NodeKind::kLeader || n.kind == NodeKind::kFollower ||
        n.kind == NodeKind::kConcurrent) {
      decision.push_back(n.id);
    }
  }
  if (static_cast<int>(decision.size()) > max_decision_nodes) {
    throw std::length_error(std::to_string(decision.size()) +
                            " decision nodes exceed the expansion cap of " +
                            std::to_string(max_decision_nodes));
  }
  std::vector<std::vector<Move>> options;
  double estimate = 1;
  for (NodeId id : decision) {
    options.push_back(Moves(game.node(id), c));
    estimate *= static_cast<double>(options.back().size());
  }
  if (estimate > static_cast<double>(max_support)) {
    throw std::length_error("support of about " + std::to_string(estimate) +
                            " profiles exceeds the cap of " +
                            std::to_string(max_support));
  }
  ExplicitDistribution out;
  out.support.push_back({});
  out.support.back().probability = 1;
  for (std::size_t i = 0; i < decision.size(); ++i) {
    const Node& n = game.node(decision[i]);
    std::vector<ProfileWeight> next;
    next.reserve(out.support.size() * options[i].size());
    for (const ProfileWeight& w : out.support) {
      for (const Move& m : options[i]) {
        ProfileWeight x = w;
        x.probability *= m.probability;
        if (n.kind == NodeKind::kFollower) {
          x.follower.choice[n.id] = m.row;
        } else {
          x.leader.choice[n.id] = m.row;
          if (n.kind == NodeKind::kConcurrent) x.follower.choice[n.id] = m.col;
        }
        next.push_back(std::move(x));
      }
    }
    out.support = std::move(next);
  }
  return out;
}

std::map<NodeId, Rational> LeafDistribution(const Game& game,
                                            const ExplicitDistribution& d) {
  std::map<NodeId, Rational> out;
  for (const ProfileWeight& w : d.support) {
    ProfileValue v = EvaluateProfile(game, ToBehavioral(game, w.leader),
                                     ToBehavioral(game, w.follower));
    for (const auto& [leaf, p] : v.leaf_probs) out[leaf] += w.probability * p;
  }
  return out;
}

SefceHulls UpwardPass(const Game& game, const MinmaxTable& /*mm*/) {
  GameClass cls = Classify(game);
  if (cls.graph != GraphKind::kTree || cls.info != Information::kTurnBased) {
    throw GameError("sefce-tree needs a turn-based tree");
  }
  SefceHulls h;
  h.hull.resize(game.num_nodes());
  const std::vector<NodeId> order = TopologicalOrder(game);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = game.node(*it);
    switch (n.kind) {
      case NodeKind::kLeaf:
        h.hull[n.id] = Hull2D::FromPoint({n.u2, n.u1});
        break;
      case NodeKind::kLeader: {
        std::vector<const Hull2D*> parts;
        for (const Action& a : n.actions) parts.push_back(&h.hull[a.child]);
        h.hull[n.id] = HullMerge(parts);
        break;
      }
      case NodeKind::kFollower: {
        const std::size_t k = n.actions.size();
        std::vector<Rational> minx(k);
        for (std::size_t a = 0; a < k; ++a) minx[a] = MinX(h.hull[n.actions[a].child]);
        auto& restricted = h.restricted[n.id];
        auto& threshold = h.threshold[n.id];
        std::vector<const Hull2D*> parts;
        for (std::size_t a = 0; a < k; ++a) {
          ExtRational t = ExtRational::NegInf();
          for (std::size_t b = 0; b < k; ++b) {
            if (b != a) t = std::max(t, ExtRational(minx[b]));
          }
          threshold.push_back(t);
          const Hull2D& child = h.hull[n.actions[a].child];
          restricted.push_back(t.is_finite() ? RestrictHalfspace(child, t.value())
                                             : std::optional<Hull2D>(child));
        }
        for (const auto& r : restricted) {
          if (r) parts.push_back(&*r);
        }
        h.hull[n.id] = HullMerge(parts);
        break;
      }
      case NodeKind::kChance: {
        std::vector<WeightedHull> parts;
        for (const ChanceBranch& b : n.branches) {
          parts.push_back({&h.hull[b.child], b.probability});
        }
        h.hull[n.id] = MinkowskiWeighted(parts);
        break;
      }
      case NodeKind::kConcurrent:
        break;
    }
  }
  return h;
}

CompactSefce SolveSefceTree(const Game& game, SefceHulls* hulls_out) {
  CompactSefce c;
  c.punishment = ComputeMinmax(game);
  SefceHulls h = UpwardPass(game, c.punishment);
  c.value = MaxYPoint(h.hull[game.root()]);

  std::vector<std::pair<NodeId, Point>> stack{{game.root(), c.value}};
  while (!stack.empty()) {
    auto [id, target] = stack.back();
    stack.pop_back();
    c.on_path.insert(id);
    const Node& n = game.node(id);
    switch (n.kind) {
      case NodeKind::kLeaf:
        if (target != Point{n.u2, n.u1}) {
          throw std::logic_error("downward pass reached leaf " +
                                 std::to_string(id) + " at " + ToString(target));
        }
        break;
      case NodeKind::kLeader:
      case NodeKind::kFollower: {
        // Part index -> action index; follower nodes skip unusable actions.
        std::vector<int> action_of;
        if (n.kind == NodeKind::kLeader) {
          for (std::size_t a = 0; a < n.actions.size(); ++a) action_of.push_back(a);
        } else {
          const auto& r = h.restricted.at(id);
          for (std::size_t a = 0; a < r.size(); ++a) {
            if (r[a]) action_of.push_back(static_cast<int>(a));
          }
        }
        Decomposition d = Decompose(h.hull[id], target);
        std::vector<Rational> mix(n.actions.size());
        const int a = action_of[d.part_a];
        const int b = action_of[d.part_b];
        mix[a] += d.alpha;
        mix[b] += Rational(1) - d.alpha;
        (n.kind == NodeKind::kLeader ? c.leader : c.follower).mix[id] = mix;
        stack.push_back({n.actions[a].child, d.a});
        if (b != a) stack.push_back({n.actions[b].child, d.b});
        break;
      }
      case NodeKind::kChance: {
        std::vector<WeightedHull> parts;
        for (const ChanceBranch& br : n.branches) {
          parts.push_back({&h.hull[br.child], br.probability});
        }
        std::vector<Point> pts = DecomposeSum(parts, h.hull[id], target);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          stack.push_back({n.branches[i].child, pts[i]});
        }
        break;
      }
      case NodeKind::kConcurrent:
        throw GameError("sefce-tree needs a turn-based tree");
    }
  }
  if (hulls_out != nullptr) *hulls_out = std::move(h);
  return c;
}

}  // namespace stackel
