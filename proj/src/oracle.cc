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

#include "stackel/oracle.h"

#include <algorithm>
#include <array>
#include <functional>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stackel/lp.h"
#include "stackel/minmax.h"

namespace stackel {
namespace {

void CheckNodes(const Game& game, const OracleBudget& budget) {
  const int n = CountDecisionNodes(game);
  if (n > budget.max_decision_nodes) {
    throw BudgetError(std::to_string(n) + " decision nodes exceed the budget of " +
                      std::to_string(budget.max_decision_nodes));
  }
}

// Leader nodes in id order and the number of their pure strategies.
std::vector<NodeId> LeaderNodes(const Game& game, const OracleBudget& budget) {
  std::vector<NodeId> out;
  std::uint64_t count = 1;
  for (const Node& n : game.nodes()) {
    if (n.kind != NodeKind::kLeader) continue;
    out.push_back(n.id);
    count *= n.actions.size();
    if (count > budget.max_pure_profiles) {
      throw BudgetError("more than " + std::to_string(budget.max_pure_profiles) +
                        " leader pure strategies");
    }
  }
  return out;
}

// Advances an odometer over the leader nodes, last node fastest.
bool Next(const Game& game, const std::vector<NodeId>& nodes,
          std::vector<int>& choice) {
  for (std::size_t i = nodes.size(); i-- > 0;) {
    NodeId id = nodes[i];
    if (++choice[id] < static_cast<int>(game.node(id).actions.size())) {
      return true;
    }
    choice[id] = 0;
  }
  return false;
}

// Backward induction under a leader pure strategy, follower ties broken by
// larger u1 then lowest action index.
class PureEvaluator {
 public:
  explicit PureEvaluator(const Game& game)
      : game_(game),
        order_(TopologicalOrder(game)),
        v1_(game.num_nodes()),
        v2_(game.num_nodes()) {
    for (const Node& n : game.nodes()) {
      if (n.kind == NodeKind::kConcurrent) {
        throw GameError("pure oracle needs a turn-based game");
      }
    }
  }

  void Run(const std::vector<int>& choice) {
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const Node& n = game_.node(*it);
      switch (n.kind) {
        case NodeKind::kLeaf:
          v1_[n.id] = n.u1;
          v2_[n.id] = n.u2;
          break;
        case NodeKind::kLeader: {
          NodeId c = n.actions[choice[n.id]].child;
          v1_[n.id] = v1_[c];
          v2_[n.id] = v2_[c];
          break;
        }
        case NodeKind::kFollower: {
          std::size_t best = 0;
          for (std::size_t a = 1; a < n.actions.size(); ++a) {
            NodeId c = n.actions[a].child;
            NodeId b = n.actions[best].child;
            if (v2_[c] > v2_[b] || (v2_[c] == v2_[b] && v1_[c] > v1_[b])) {
              best = a;
            }
          }
          v1_[n.id] = v1_[n.actions[best].child];
          v2_[n.id] = v2_[n.actions[best].child];
          break;
        }
        case NodeKind::kChance: {
          Rational a1, a2;
          for (const ChanceBranch& br : n.branches) {
            a1 += br.probability * v1_[br.child];
            a2 += br.probability * v2_[br.child];
          }
          v1_[n.id] = a1;
          v2_[n.id] = a2;
          break;
        }
        case NodeKind::kConcurrent:
          break;
      }
    }
  }

  const Rational& v1(NodeId id) const { return v1_[id]; }
  const Rational& v2(NodeId id) const { return v2_[id]; }

 private:
  const Game& game_;
  std::vector<NodeId> order_;
  std::vector<Rational> v1_;
  std::vector<Rational> v2_;
};

// A reduced pure profile of one subtree with its utilities and the
// follower-incentive coefficients it contributes, relative to reaching the
// subtree root.
struct SubProfile {
  std::vector<std::array<int, 3>> assign;  // (node, row, col)
  Rational u1;
  Rational u2;
  std::map<int, Rational> coef;
};

std::uint64_t SaturatingAdd(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  return a + b > cap ? cap + 1 : a + b;
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a != 0 && b > (cap + 1) / a) return cap + 1;
  return std::min(a * b, cap + 1);
}

// Keeps points not weakly dominated in both coordinates.
std::vector<Point> Prune(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x > b.x : a.y > b.y;
  });
  std::vector<Point> out;
  for (Point& p : pts) {
    if (out.empty() || p.y > out.back().y) out.push_back(std::move(p));
  }
  return out;
}

// All ways to split g into k non-negative parts, last part fastest.
std::vector<std::vector<int>> Compositions(int g, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, g);
  return out;
}

class GridSolver {
 public:
  GridSolver(const Game& game, int g, const OracleBudget& budget)
      : game_(game), g_(g), budget_(budget) {}

  GridFrontiers Run() {
    out_.frontier.resize(game_.num_nodes());
    out_.threat.resize(game_.num_nodes());
    const std::vector<NodeId> order = TopologicalOrder(game_);
    for (auto it = order.rbegin(); it != order.rend(); ++it) Visit(*it);
    const std::vector<Point>& root = out_.frontier[game_.root()];
    out_.value = root.back().y;
    return std::move(out_);
  }

 private:
  void Charge(std::uint64_t n) {
    out_.work += n;
    if (out_.work > budget_.max_grid_work) {
      throw BudgetError("grid oracle work exceeds " +
                        std::to_string(budget_.max_grid_work) + " points");
    }
  }

  // { sum_i w_i p_i : p_i in parts[i] }, pruned after every step.
  std::vector<Point> Sum(const std::vector<std::pair<NodeId, Rational>>& parts) {
    std::vector<Point> acc{{Rational(0), Rational(0)}};
    for (const auto& [child, w] : parts) {
      if (w.is_zero()) continue;
      const std::vector<Point>& f = out_.frontier[child];
      Charge(acc.size() * f.size());
      std::vector<Point> next;
      next.reserve(acc.size() * f.size());
      for (const Point& a : acc) {
        for (const Point& b : f) next.push_back(a + w * b);
      }
      acc = Prune(std::move(next));
    }
    return acc;
  }

  void Visit(NodeId id) {
    const Node& n = game_.node(id);
    std::vector<Point>& f = out_.frontier[id];
    Rational& m = out_.threat[id];
    const std::vector<NodeId> kids = n.Children();
    switch (n.kind) {
      case NodeKind::kLeaf:
        f = {{n.u2, n.u1}};
        m = n.u2;
        return;
      case NodeKind::kChance: {
        std::vector<std::pair<NodeId, Rational>> parts;
        m = 0;
        for (const ChanceBranch& b : n.branches) {
          parts.push_back({b.child, b.probability});
          m += b.probability * out_.threat[b.child];
        }
        f = Sum(parts);
        return;
      }
      case NodeKind::kFollower: {
        std::vector<Point> all;
        for (std::size_t c = 0; c < kids.size(); ++c) {
          std::optional<Rational> t;
          for (std::size_t o = 0; o < kids.size(); ++o) {
            if (o != c && (!t || out_.threat[kids[o]] > *t)) t = out_.threat[kids[o]];
          }
          for (const Point& p : out_.frontier[kids[c]]) {
            if (!t || p.x >= *t) all.push_back(p);
          }
        }
        m = out_.threat[kids[0]];
        for (NodeId c : kids) m = std::max(m, out_.threat[c]);
        f = Prune(std::move(all));
        return;
      }
      case NodeKind::kLeader: {
        const auto comps = Compositions(g_, static_cast<int>(kids.size()));
        Charge(comps.size());
        std::vector<Point> all;
        for (const std::vector<int>& c : comps) {
          std::vector<std::pair<NodeId, Rational>> parts;
          for (std::size_t a = 0; a < kids.size(); ++a) {
            parts.push_back({kids[a], Rational(c[a], g_)});
          }
          std::vector<Point> s = Sum(parts);
          all.insert(all.end(), s.begin(), s.end());
        }
        m = out_.threat[kids[0]];
        for (NodeId c : kids) m = std::min(m, out_.threat[c]);
        f = Prune(std::move(all));
        return;
      }
      case NodeKind::kConcurrent: {
        const std::size_t rows = n.rows.size(), cols = n.cols.size();
        const auto comps = Compositions(g_, static_cast<int>(rows));
        Charge(comps.size() * cols);
        std::vector<Point> all;
        bool first = true;
        for (const std::vector<int>& c : comps) {
          // Follower value of each column when every cell punishes.
          std::vector<Rational> col(cols);
          for (std::size_t b = 0; b < cols; ++b) {
            for (std::size_t r = 0; r < rows; ++r) {
              col[b] += Rational(c[r], g_) * out_.threat[n.Cell(r, b)];
            }
          }
          const Rational worst = *std::max_element(col.begin(), col.end());
          if (first || worst < m) m = worst;
          first = false;
          for (std::size_t b = 0; b < cols; ++b) {
            std::optional<Rational> t;
            for (std::size_t o = 0; o < cols; ++o) {
              if (o != b && (!t || col[o] > *t)) t = col[o];
            }
            std::vector<std::pair<NodeId, Rational>> parts;
            for (std::size_t r = 0; r < rows; ++r) {
              parts.push_back({n.Cell(r, b), Rational(c[r], g_)});
            }
            for (const Point& p : Sum(parts)) {
              if (!t || p.x >= *t) all.push_back(p);
            }
          }
        }
        f = Prune(std::move(all));
        return;
      }
    }
  }

  const Game& game_;
  const int g_;
  const OracleBudget& budget_;
  GridFrontiers out_;
};

}  // namespace

OracleBudget OracleBudget::FromEnv() {
  OracleBudget b;
  if (const char* env = std::getenv("STACKEL_BUDGET_NODES")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.max_decision_nodes = static_cast<int>(v);
  }
  return b;
}

int CountDecisionNodes(const Game& game) {
  int n = 0;
  for (const Node& node : game.nodes()) {
    n += node.kind == NodeKind::kLeader || node.kind == NodeKind::kFollower ||
         node.kind == NodeKind::kConcurrent;
  }
  return n;
}

PureCommitmentSolution BruteForcePure(const Game& game,
                                      const OracleBudget& budget) {
  CheckNodes(game, budget);
  const std::vector<NodeId> leaders = LeaderNodes(game, budget);
  PureEvaluator eval(game);
  std::vector<int> choice(game.num_nodes(), 0);
  std::vector<int> best_choice;
  Rational best1, best2;
  do {
    eval.Run(choice);
    const Rational& a = eval.v1(game.root());
    const Rational& b = eval.v2(game.root());
    if (best_choice.empty() || a > best1 || (a == best1 && b > best2)) {
      best_choice = choice;
      best1 = a;
      best2 = b;
    }
  } while (Next(game, leaders, choice));

  PureCommitmentSolution out;
  for (NodeId id : leaders) out.leader.choice[id] = best_choice[id];
  ResponseValue r = LeaderFavoringResponse(game, ToBehavioral(game, out.leader));
  out.follower = r.follower;
  ProfileValue v = EvaluateProfile(game, ToBehavioral(game, out.leader),
                                   ToBehavioral(game, out.follower));
  out.leader_value = v.u1;
  out.follower_value = v.u2;
  // With chance the outcome is a lottery; the lowest reached leaf is kept.
  out.chosen_leaf = v.leaf_probs.begin()->first;
  return out;
}

std::set<NodeId> PureReachableLeaves(const Game& game,
                                     const OracleBudget& budget) {
  CheckNodes(game, budget);
  if (Classify(game).chance) throw GameError("reachability needs no chance");
  const std::vector<NodeId> leaders = LeaderNodes(game, budget);
  PureEvaluator eval(game);
  std::vector<int> choice(game.num_nodes(), 0);
  std::set<NodeId> out;
  std::vector<char> seen(game.num_nodes());
  std::vector<NodeId> stack;
  do {
    eval.Run(choice);
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, game.root());
    seen[game.root()] = 1;
    while (!stack.empty()) {
      const Node& n = game.node(stack.back());
      stack.pop_back();
      auto visit = [&](NodeId c) {
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
      };
      if (n.is_leaf()) {
        out.insert(n.id);
      } else if (n.kind == NodeKind::kLeader) {
        visit(n.actions[choice[n.id]].child);
      } else {
        for (const Action& a : n.actions) {
          if (eval.v2(a.child) == eval.v2(n.id)) visit(a.child);
        }
      }
    }
  } while (Next(game, leaders, choice));
  return out;
}

SefceOracleResult BruteForceSefce(const Game& game,
                                  const OracleBudget& budget) {
  CheckNodes(game, budget);
  if (Classify(game).graph != GraphKind::kTree) {
    throw GameError("the SEFCE oracle needs a tree");
  }
  const std::vector<NodeId> order = TopologicalOrder(game);
  const std::uint64_t cap = budget.max_pure_profiles;
  std::vector<std::uint64_t> count(game.num_nodes(), 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = game.node(*it);
    if (n.is_leaf()) continue;
    std::uint64_t c = n.kind == NodeKind::kChance ? 1 : 0;
    for (NodeId ch : n.Children()) {
      c = n.kind == NodeKind::kChance ? SaturatingMul(c, count[ch], cap)
                                      : SaturatingAdd(c, count[ch], cap);
    }
    count[n.id] = c;
  }
  if (count[game.root()] > cap) {
    throw BudgetError("more than " + std::to_string(cap) +
                      " reduced pure profiles");
  }

  const MinmaxTable mm = ComputeMinmax(game);
  // Constraint ids: (node, recommended, deviation) at follower choices.
  std::map<NodeId, int> base;
  int num_constraints = 0;
  for (const Node& n : game.nodes()) {
    std::size_t k = n.kind == NodeKind::kFollower     ? n.actions.size()
                    : n.kind == NodeKind::kConcurrent ? n.cols.size()
                                                      : 0;
    if (k < 2) continue;
    base[n.id] = num_constraints;
    num_constraints += static_cast<int>(k * k);
  }

  std::vector<std::vector<SubProfile>> subs(game.num_nodes());
  auto extend = [&](const Node& n, int row, int col, NodeId child,
                    std::vector<SubProfile>& out) {
    for (const SubProfile& x : subs[child]) {
      SubProfile y = x;
      y.assign.push_back({static_cast<int>(n.id), row, col});
      auto b = base.find(n.id);
      if (b != base.end()) {
        const bool turn = n.kind == NodeKind::kFollower;
        const int rec = turn ? row : col;
        const int k = static_cast<int>(turn ? n.actions.size() : n.cols.size());
        for (int d = 0; d < k; ++d) {
          if (d == rec) continue;
          NodeId target = turn ? n.actions[d].child : n.Cell(row, d);
          Rational c = x.u2 - mm.mu[target];
          if (!c.is_zero()) y.coef[b->second + rec * k + d] += c;
        }
      }
      out.push_back(std::move(y));
    }
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = game.node(*it);
    std::vector<SubProfile> out;
    switch (n.kind) {
      case NodeKind::kLeaf:
        out.push_back({{}, n.u1, n.u2, {}});
        break;
      case NodeKind::kLeader:
      case NodeKind::kFollower:
        for (std::size_t a = 0; a < n.actions.size(); ++a) {
          extend(n, static_cast<int>(a), 0, n.actions[a].child, out);
        }
        break;
      case NodeKind::kConcurrent:
        for (std::size_t r = 0; r < n.rows.size(); ++r) {
          for (std::size_t c = 0; c < n.cols.size(); ++c) {
            extend(n, static_cast<int>(r), static_cast<int>(c), n.Cell(r, c), out);
          }
        }
        break;
      case NodeKind::kChance: {
        out.push_back({{}, 0, 0, {}});
        for (const ChanceBranch& br : n.branches) {
          std::vector<SubProfile> next;
          for (const SubProfile& acc : out) {
            for (const SubProfile& x : subs[br.child]) {
              SubProfile y = acc;
              y.assign.insert(y.assign.end(), x.assign.begin(), x.assign.end());
              y.u1 += br.probability * x.u1;
              y.u2 += br.probability * x.u2;
              for (const auto& [id, c] : x.coef) y.coef[id] += br.probability * c;
              next.push_back(std::move(y));
            }
          }
          out = std::move(next);
        }
        break;
      }
    }
    for (NodeId ch : n.Children()) std::vector<SubProfile>().swap(subs[ch]);
    subs[n.id] = std::move(out);
  }
  std::vector<SubProfile>& all = subs[game.root()];

  SefceOracleResult result;
  result.profiles = all.size();
  std::map<std::string, int> column_of;
  std::vector<int> columns;  // representative profile per column
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::string key = all[i].u1.ToString();
    for (const auto& [id, c] : all[i].coef) {
      if (c.is_zero()) continue;
      key += " " + std::to_string(id) + ":" + c.ToString();
    }
    if (column_of.emplace(key, static_cast<int>(columns.size())).second) {
      columns.push_back(static_cast<int>(i));
    }
  }
  result.columns = columns.size();

  LinearProgram lp;
  std::vector<LinearTerm> sum, objective;
  std::map<int, std::vector<LinearTerm>> rows;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const SubProfile& p = all[columns[j]];
    int x = lp.AddVariable("x" + std::to_string(j));
    sum.push_back({x, 1});
    if (!p.u1.is_zero()) objective.push_back({x, p.u1});
    for (const auto& [id, c] : p.coef) {
      if (!c.is_zero()) rows[id].push_back({x, c});
    }
  }
  lp.AddConstraint("total", sum, Relation::kEqual, 1);
  for (auto& [id, terms] : rows) {
    lp.AddConstraint("ic" + std::to_string(id), terms, Relation::kGreaterEq, 0);
  }
  lp.SetObjective(Sense::kMaximize, objective);
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("SEFCE oracle LP " + ToString(sol.status));
  }
  result.value = sol.objective;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (sol.values[j].is_zero()) continue;
    ProfileWeight w;
    for (const auto& [node, row, col] : all[columns[j]].assign) {
      const Node& n = game.node(static_cast<NodeId>(node));
      if (n.kind == NodeKind::kFollower) {
        w.follower.choice[n.id] = row;
      } else {
        w.leader.choice[n.id] = row;
        if (n.kind == NodeKind::kConcurrent) w.follower.choice[n.id] = col;
      }
    }
    w.probability = sol.values[j];
    result.dist.support.push_back(std::move(w));
  }
  return result;
}

GridFrontiers GridBehavioralFrontiers(const Game& game, int g,
                                      const OracleBudget& budget) {
  if (g < 1) throw std::invalid_argument("grid denominator must be positive");
  if (Classify(game).graph != GraphKind::kTree) {
    throw GameError("grid oracle needs a tree");
  }
  CheckNodes(game, budget);
  return GridSolver(game, g, budget).Run();
}

Rational GridBehavioral(const Game& game, int g, const OracleBudget& budget) {
  return GridBehavioralFrontiers(game, g, budget).value;
}

Rational ReductionExactBehavioral(const Game& game, const OracleBudget& budget) {
  const Node& root = game.node(game.root());
  const std::size_t n = root.rows.size();
  bool shape = root.kind == NodeKind::kConcurrent && n > 0 &&
               root.cols.size() == n + 1;
  for (std::size_t i = 0; shape && i < n; ++i) {
    const Node& sub = game.node(root.Cell(i, 0));
    shape = sub.kind == NodeKind::kConcurrent && sub.rows.size() == 2 &&
            sub.cols.size() == 2;
    for (std::size_t j = 0; j < 4 && shape; ++j) {
      shape = game.node(sub.Children()[j]).is_leaf();
    }
    for (std::size_t j = 1; j <= n && shape; ++j) {
      shape = game.node(root.Cell(i, j)).is_leaf();
    }
  }
  if (!shape) throw GameError("not a knapsack reduction game");
  if (n >= 63 || (std::uint64_t{1} << n) > budget.max_pure_profiles) {
    throw BudgetError(std::to_string(n) + " items: 2^" + std::to_string(n) +
                      " assignments exceed the budget of " +
                      std::to_string(budget.max_pure_profiles));
  }
  BehavioralStrategy leader{Player::kLeader, {}};
  leader.mix[game.root()] = std::vector<Rational>(n, Rational(1, n));
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool take = (mask >> i) & 1;
      leader.mix[root.Cell(i, 0)] = {Rational(take ? 1 : 0), Rational(take ? 0 : 1)};
    }
    Rational v = LeaderFavoringResponse(game, leader).u1;
    if (!best || v > *best) best = v;
  }
  return *best;
}

}  // namespace stackel
