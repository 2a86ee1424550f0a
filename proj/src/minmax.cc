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

#include "stackel/minmax.h"

#include <stdexcept>

#include "stackel/lp.h"

namespace stackel {

MatrixGameSolution SolveMatrixGame(const Matrix& m) {
  if (m.empty() || m[0].empty()) {
    throw std::invalid_argument("matrix game with no rows or columns");
  }
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  for (const auto& r : m) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
  }
  MatrixGameSolution out;
  {
    // min v  s.t.  sum_r x_r m[r][c] <= v for every column.
    LinearProgram lp;
    std::vector<LinearTerm> simplex;
    for (std::size_t r = 0; r < rows; ++r) {
      simplex.push_back({lp.AddVariable("x" + std::to_string(r)), 1});
    }
    int v = lp.AddVariable("v", std::nullopt);
    lp.AddConstraint("sum", simplex, Relation::kEqual, 1);
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<LinearTerm> terms;
      for (std::size_t r = 0; r < rows; ++r) {
        if (!m[r][c].is_zero()) terms.push_back({static_cast<int>(r), m[r][c]});
      }
      terms.push_back({v, -1});
      lp.AddConstraint("col" + std::to_string(c), terms, Relation::kLessEq, 0);
    }
    lp.SetObjective(Sense::kMinimize, {{v, 1}});
    LpSolution s = SolveLp(lp);
    if (s.status != LpStatus::kOptimal) {
      throw std::logic_error("matrix game LP not optimal");
    }
    out.value = s.objective;
    out.row_mix.assign(s.values.begin(), s.values.begin() + rows);
  }
  {
    // max w  s.t.  sum_c y_c m[r][c] >= w for every row.
    LinearProgram lp;
    std::vector<LinearTerm> simplex;
    for (std::size_t c = 0; c < cols; ++c) {
      simplex.push_back({lp.AddVariable("y" + std::to_string(c)), 1});
    }
    int w = lp.AddVariable("w", std::nullopt);
    lp.AddConstraint("sum", simplex, Relation::kEqual, 1);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<LinearTerm> terms;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!m[r][c].is_zero()) terms.push_back({static_cast<int>(c), m[r][c]});
      }
      terms.push_back({w, -1});
      lp.AddConstraint("row" + std::to_string(r), terms, Relation::kGreaterEq,
                       0);
    }
    lp.SetObjective(Sense::kMaximize, {{w, 1}});
    LpSolution s = SolveLp(lp);
    if (s.status != LpStatus::kOptimal || s.objective != out.value) {
      throw std::logic_error("matrix game LPs disagree");
    }
    out.col_mix.assign(s.values.begin(), s.values.begin() + cols);
  }
  return out;
}

MinmaxTable ComputeMinmax(const Game& game) {
  MinmaxTable t;
  t.mu.resize(game.num_nodes());
  std::vector<NodeId> order = TopologicalOrder(game);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& node = game.node(*it);
    switch (node.kind) {
      case NodeKind::kLeaf:
        t.mu[node.id] = node.u2;
        break;
      case NodeKind::kLeader: {
        std::size_t best = 0;
        for (std::size_t a = 1; a < node.actions.size(); ++a) {
          const Rational& va = t.mu[node.actions[a].child];
          const Rational& vb = t.mu[node.actions[best].child];
          if (va < vb ||
              (va == vb && node.actions[a].child < node.actions[best].child)) {
            best = a;
          }
        }
        std::vector<Rational> mix(node.actions.size());
        mix[best] = 1;
        t.punish_leader.mix[node.id] = std::move(mix);
        t.mu[node.id] = t.mu[node.actions[best].child];
        break;
      }
      case NodeKind::kFollower: {
        std::size_t best = 0;
        for (std::size_t a = 1; a < node.actions.size(); ++a) {
          const Rational& va = t.mu[node.actions[a].child];
          const Rational& vb = t.mu[node.actions[best].child];
          if (va > vb ||
              (va == vb && node.actions[a].child < node.actions[best].child)) {
            best = a;
          }
        }
        std::vector<Rational> mix(node.actions.size());
        mix[best] = 1;
        t.punish_follower.mix[node.id] = std::move(mix);
        t.mu[node.id] = t.mu[node.actions[best].child];
        break;
      }
      case NodeKind::kConcurrent: {
        Matrix m(node.rows.size(), std::vector<Rational>(node.cols.size()));
        for (std::size_t r = 0; r < node.rows.size(); ++r) {
          for (std::size_t c = 0; c < node.cols.size(); ++c) {
            m[r][c] = t.mu[node.Cell(r, c)];
          }
        }
        MatrixGameSolution s = SolveMatrixGame(m);
        t.mu[node.id] = s.value;
        t.punish_leader.mix[node.id] = std::move(s.row_mix);
        t.punish_follower.mix[node.id] = std::move(s.col_mix);
        break;
      }
      case NodeKind::kChance: {
        Rational v;
        for (const ChanceBranch& b : node.branches) {
          v += b.probability * t.mu[b.child];
        }
        t.mu[node.id] = v;
        break;
      }
    }
  }
  return t;
}

}  // namespace stackel
