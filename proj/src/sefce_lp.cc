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

#include "stackel/sefce_lp.h"

#include <stdexcept>
#include <string>

namespace stackel {

LinearProgram BuildSefceLp(const Game& game, const MinmaxTable& mm) {
  if (Classify(game).graph != GraphKind::kTree) {
    throw GameError("the SEFCE LP needs a tree");
  }
  LinearProgram lp;
  for (const Node& n : game.nodes()) {
    lp.AddVariable("d" + std::to_string(n.id), Rational(0), Rational(1));
  }
  for (const Node& n : game.nodes()) {
    lp.AddVariable("v" + std::to_string(n.id), std::nullopt);
  }
  auto d = [](NodeId s) { return DeltaVar(s); };
  auto v = [&](NodeId s) { return V2Var(game, s); };

  lp.AddConstraint("root", {{d(game.root()), 1}}, Relation::kEqual, 1);
  std::vector<LinearTerm> objective;
  for (const Node& n : game.nodes()) {
    const std::string id = std::to_string(n.id);
    if (n.is_leaf()) {
      if (!n.u1.is_zero()) objective.push_back({d(n.id), n.u1});
      lp.AddConstraint("leaf" + id, {{v(n.id), 1}, {d(n.id), -n.u2}},
                       Relation::kEqual, 0);
      continue;
    }
    std::vector<LinearTerm> flow{{d(n.id), -1}};
    std::vector<LinearTerm> value{{v(n.id), -1}};
    for (NodeId c : n.Children()) {
      flow.push_back({d(c), 1});
      value.push_back({v(c), 1});
    }
    if (n.kind == NodeKind::kChance) {
      for (const ChanceBranch& b : n.branches) {
        lp.AddConstraint("chance" + id + "_" + std::to_string(b.child),
                         {{d(b.child), 1}, {d(n.id), -b.probability}},
                         Relation::kEqual, 0);
      }
    } else {
      lp.AddConstraint("flow" + id, flow, Relation::kEqual, 0);
    }
    lp.AddConstraint("value" + id, value, Relation::kEqual, 0);

    // Incentives: rows are leader actions, columns follower actions.
    std::size_t rows = 0, cols = 0;
    auto cell = [&](std::size_t r, std::size_t c) {
      return n.kind == NodeKind::kConcurrent ? n.Cell(r, c)
             : n.kind == NodeKind::kFollower ? n.actions[c].child
                                             : n.actions[r].child;
    };
    if (n.kind == NodeKind::kConcurrent) {
      rows = n.rows.size();
      cols = n.cols.size();
    } else if (n.kind == NodeKind::kFollower) {
      rows = 1;
      cols = n.actions.size();
    }
    for (std::size_t a = 0; a < cols; ++a) {
      for (std::size_t b = 0; b < cols; ++b) {
        if (a == b) continue;
        std::vector<LinearTerm> terms;
        for (std::size_t r = 0; r < rows; ++r) {
          terms.push_back({v(cell(r, a)), 1});
          const Rational& threat = mm.mu[cell(r, b)];
          if (!threat.is_zero()) terms.push_back({d(cell(r, a)), -threat});
        }
        lp.AddConstraint("ic" + id + "_" + std::to_string(a) + "_" +
                             std::to_string(b),
                         terms, Relation::kGreaterEq, 0);
      }
    }
  }
  lp.SetObjective(Sense::kMaximize, objective);
  return lp;
}

FlowSolution SolveSefceConcurrent(const Game& game) {
  FlowSolution out;
  out.compact.punishment = ComputeMinmax(game);
  LinearProgram lp = BuildSefceLp(game, out.compact.punishment);
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("SEFCE LP " + ToString(sol.status));
  }
  const std::size_t n = game.num_nodes();
  out.delta.assign(sol.values.begin(), sol.values.begin() + n);
  out.v2.assign(sol.values.begin() + n, sol.values.end());
  out.leader_value = sol.objective;
  out.pivots = sol.pivots;

  CompactSefce& c = out.compact;
  for (const Node& node : game.nodes()) {
    const Rational& reach = out.delta[node.id];
    if (reach.is_zero()) continue;
    c.on_path.insert(node.id);
    std::vector<Rational> share;
    for (NodeId ch : node.Children()) share.push_back(out.delta[ch] / reach);
    switch (node.kind) {
      case NodeKind::kLeader:
        c.leader.mix[node.id] = share;
        break;
      case NodeKind::kFollower:
        c.follower.mix[node.id] = share;
        break;
      case NodeKind::kConcurrent:
        c.joint[node.id] = share;
        break;
      default:
        break;
    }
  }
  c.value = {out.v2[game.root()], out.leader_value};
  return out;
}

}  // namespace stackel
