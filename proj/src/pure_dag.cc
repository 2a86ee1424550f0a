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

#include "stackel/pure_dag.h"

#include <algorithm>
#include <stdexcept>

namespace stackel {
namespace {

void RequirePureDagClass(const Game& game) {
  GameClass c = Classify(game);
  if (c.info != Information::kTurnBased || c.chance) {
    throw GameError("pure-dag needs a turn-based game without chance");
  }
}

// Capacity contributed by the edge from `s` along action `a`.
ExtRational EdgeCapacity(const Node& s, std::size_t a,
                         const CapacityTable& caps, const MinmaxTable& mm) {
  const ExtRational& own = caps.gamma[s.id];
  if (s.kind == NodeKind::kLeader) return own;
  const NodeId target = s.actions[a].child;
  ExtRational sibling = ExtRational::NegInf();
  for (const Action& act : s.actions) {
    if (act.child == target) continue;
    sibling = std::max(sibling, ExtRational(mm.mu[act.child]));
  }
  return std::max(own, sibling);
}

}  // namespace

CapacityTable ComputeCapacities(const Game& game, const MinmaxTable& mm) {
  RequirePureDagClass(game);
  CapacityTable caps;
  caps.gamma.assign(game.num_nodes(), ExtRational::PosInf());
  caps.gamma[game.root()] = ExtRational::NegInf();
  for (NodeId id : TopologicalOrder(game)) {
    const Node& s = game.node(id);
    if (s.is_leaf()) continue;
    if (s.kind == NodeKind::kLeader) {
      for (const Action& act : s.actions) {
        caps.gamma[act.child] = std::min(caps.gamma[act.child], caps.gamma[id]);
      }
      continue;
    }
    // Two largest mu over distinct children; the sibling max of a child is
    // the first unless that child holds it.
    NodeId top_child = s.actions[0].child;
    ExtRational top = ExtRational::NegInf();
    ExtRational second = ExtRational::NegInf();
    std::vector<NodeId> kids = s.Children();
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    for (NodeId c : kids) {
      ExtRational m = mm.mu[c];
      if (m > top) {
        second = top;
        top = m;
        top_child = c;
      } else if (m > second) {
        second = m;
      }
    }
    for (NodeId c : kids) {
      const ExtRational& sibling = c == top_child ? second : top;
      caps.gamma[c] =
          std::min(caps.gamma[c], std::max(caps.gamma[id], sibling));
    }
  }
  return caps;
}

std::vector<NodeId> PossibleOutcomes(const Game& game,
                                     const CapacityTable& caps) {
  std::vector<NodeId> out;
  for (const Node& n : game.nodes()) {
    if (n.is_leaf() && ExtRational(n.u2) >= caps.gamma[n.id]) {
      out.push_back(n.id);
    }
  }
  return out;
}

PureCommitmentSolution SolvePureDag(const Game& game) {
  RequirePureDagClass(game);
  const MinmaxTable mm = ComputeMinmax(game);
  const CapacityTable caps = ComputeCapacities(game, mm);
  const std::vector<NodeId> possible = PossibleOutcomes(game, caps);
  if (possible.empty()) throw std::logic_error("no possible outcome");
  NodeId z = possible[0];
  for (NodeId c : possible) {
    const Node& a = game.node(c);
    const Node& b = game.node(z);
    if (a.u1 > b.u1 || (a.u1 == b.u1 && a.u2 > b.u2)) z = c;
  }
  const ExtRational bound = game.node(z).u2;

  // Punishment everywhere, then the path to z walked backwards through
  // edges whose capacity stays within u2(z).
  PureStrategy leader{Player::kLeader, {}};
  for (const auto& [id, mix] : mm.punish_leader.mix) {
    leader.choice[id] = static_cast<int>(
        std::find(mix.begin(), mix.end(), Rational(1)) - mix.begin());
  }
  std::map<NodeId, int> preferred;
  const std::vector<std::vector<NodeId>> parents = Parents(game);
  NodeId cur = z;
  while (cur != game.root()) {
    std::vector<NodeId> ps = parents[cur];
    std::sort(ps.begin(), ps.end());
    bool stepped = false;
    for (NodeId p : ps) {
      const Node& s = game.node(p);
      for (std::size_t a = 0; a < s.actions.size() && !stepped; ++a) {
        if (s.actions[a].child != cur) continue;
        if (EdgeCapacity(s, a, caps, mm) > bound) continue;
        if (s.kind == NodeKind::kLeader) {
          leader.choice[p] = static_cast<int>(a);
        } else {
          preferred[p] = static_cast<int>(a);
        }
        cur = p;
        stepped = true;
      }
      if (stepped) break;
    }
    if (!stepped) throw std::logic_error("capacity path broken");
  }

  BehavioralStrategy lead = ToBehavioral(game, leader);
  ResponseValue r = LeaderFavoringResponse(game, lead, std::nullopt, &preferred);
  ProfileValue v =
      EvaluateProfile(game, lead, ToBehavioral(game, r.follower));
  if (v.leaf_probs.size() != 1) throw std::logic_error("pure play split");
  PureCommitmentSolution out;
  out.leader = std::move(leader);
  out.follower = std::move(r.follower);
  out.chosen_leaf = v.leaf_probs.begin()->first;
  out.leader_value = v.u1;
  out.follower_value = v.u2;
  if (out.chosen_leaf != z) throw std::logic_error("capacity path not taken");
  return out;
}

}  // namespace stackel
