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

#include "stackel/fptas.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace stackel {
namespace {

bool Finite(const TradeoffTable& t, std::int64_t k) {
  return k >= 0 && k < static_cast<std::int64_t>(t.size()) && t[k].is_finite();
}

// Last index with a finite entry, or -1.
std::int64_t LastFinite(const TradeoffTable& t) {
  std::int64_t m = static_cast<std::int64_t>(t.size()) - 1;
  while (m >= 0 && !t[m].is_finite()) --m;
  return m;
}

struct TablePoint {
  std::int64_t x;
  Rational y;
};

// a strictly above the line through l and r (l.x < r.x).
bool Above(const TablePoint& a, const TablePoint& l, const TablePoint& r) {
  // (r - l) x (a - l) > 0
  return Rational(r.x - l.x) * (a.y - l.y) - Rational(a.x - l.x) * (r.y - l.y) >
         Rational(0);
}

struct Bridge {
  ExtRational value = ExtRational::NegInf();
  std::int64_t left = -1;
  std::int64_t right = -1;
};

// For every k, the best point at x = k on a segment from a `left` entry at
// j < k to a `right` entry at i > k: the upper tangent of the two upper
// hulls. The right hulls are built right to left once and unwound while k
// advances.
std::vector<Bridge> BridgeMax(const TradeoffTable& left,
                              const TradeoffTable& right) {
  const std::int64_t n = static_cast<std::int64_t>(left.size());
  std::vector<Bridge> out(n);
  const std::int64_t ml = LastFinite(left);
  const std::int64_t mr = LastFinite(right);
  if (ml < 0 || mr < 0) return out;

  // Right hull as a stack whose back is the leftmost vertex.
  std::vector<TablePoint> hr;
  std::vector<std::vector<TablePoint>> popped(n);
  auto push_right = [&](std::int64_t i) {
    TablePoint c{i, right[i].value()};
    while (hr.size() >= 2 && !Above(hr.back(), c, hr[hr.size() - 2])) {
      popped[i].push_back(hr.back());
      hr.pop_back();
    }
    hr.push_back(c);
  };
  for (std::int64_t i = mr; i >= 1; --i) push_right(i);

  std::vector<TablePoint> hl;  // back is the rightmost vertex
  for (std::int64_t k = 0; k < n; ++k) {
    // Invariant: hr covers right entries at i > k, hl left entries at j < k.
    if (k >= 1 && k - 1 <= ml) {
      TablePoint c{k - 1, left[k - 1].value()};
      while (hl.size() >= 2 && !Above(hl.back(), hl[hl.size() - 2], c)) {
        hl.pop_back();
      }
      hl.push_back(c);
    }
    if (!hl.empty() && !hr.empty()) {
      std::size_t qi = hl.size() - 1;
      std::size_t pi = hr.size() - 1;
      bool moved = true;
      while (moved) {
        moved = false;
        while (qi > 0 && Above(hl[qi - 1], hl[qi], hr[pi])) {
          --qi;
          moved = true;
        }
        while (pi > 0 && Above(hr[pi - 1], hl[qi], hr[pi])) {
          --pi;
          moved = true;
        }
      }
      const TablePoint& q = hl[qi];
      const TablePoint& p = hr[pi];
      Rational t(k - q.x, p.x - q.x);
      out[k] = {ExtRational(q.y + t * (p.y - q.y)), q.x, p.x};
    }
    // Drop entry k + 1 from the right hull before moving on.
    if (k + 1 <= mr && k + 1 >= 1 && !hr.empty() && hr.back().x == k + 1) {
      hr.pop_back();
      for (auto it = popped[k + 1].rbegin(); it != popped[k + 1].rend(); ++it) {
        hr.push_back(*it);
      }
    }
  }
  return out;
}

ExtRational Mix(const Rational& p, const ExtRational& a, const ExtRational& b) {
  if (p.is_zero()) return b;
  if (p == Rational(1)) return a;
  if (!a.is_finite() || !b.is_finite()) return ExtRational::NegInf();
  return p * a.value() + (Rational(1) - p) * b.value();
}

// Indices i <= last finite where t[i] differs from t[i + 1].
std::vector<std::int64_t> RunEnds(const TradeoffTable& t) {
  std::vector<std::int64_t> out;
  const std::int64_t m = LastFinite(t);
  for (std::int64_t i = 0; i <= m; ++i) {
    if (i == m || t[i] != t[i + 1]) out.push_back(i);
  }
  return out;
}

}  // namespace

BinarizedGame Binarize(const Game& game) {
  GameClass cls = Classify(game);
  if (cls.graph != GraphKind::kTree || cls.info != Information::kTurnBased) {
    throw GameError("binarize needs a turn-based tree");
  }
  BinarizedGame out;
  std::vector<Node> nodes;
  auto add = [&](Node n, NodeId origin) {
    n.id = static_cast<NodeId>(nodes.size());
    nodes.push_back(std::move(n));
    out.origin.push_back(origin);
    return nodes.back().id;
  };
  std::function<NodeId(NodeId)> build = [&](NodeId id) -> NodeId {
    const Node& n = game.node(id);
    if (n.is_leaf()) {
      Node leaf;
      leaf.kind = NodeKind::kLeaf;
      leaf.u1 = n.u1;
      leaf.u2 = n.u2;
      return add(std::move(leaf), id);
    }
    std::vector<NodeId> kids;
    for (NodeId c : n.Children()) kids.push_back(build(c));
    const std::size_t k = kids.size();
    std::vector<NodeId> chain;
    if (k <= 2) {
      Node copy = n;
      for (std::size_t a = 0; a < k; ++a) {
        if (n.kind == NodeKind::kChance) {
          copy.branches[a].child = kids[a];
        } else {
          copy.actions[a].child = kids[a];
        }
      }
      chain.push_back(add(std::move(copy), id));
    } else {
      // Bottom of the chain first.
      Rational tail;
      if (n.kind == NodeKind::kChance) {
        tail = n.branches[k - 1].probability;
      }
      NodeId below = kids[k - 1];
      for (std::size_t t = k - 1; t-- > 0;) {
        Node c;
        c.kind = n.kind;
        if (n.kind == NodeKind::kChance) {
          const Rational& pt = n.branches[t].probability;
          Rational q = pt / (pt + tail);
          c.branches = {{q, kids[t]}, {Rational(1) - q, below}};
          tail += pt;
        } else {
          c.actions = {{n.actions[t].label, kids[t]},
                       {t + 2 == k ? n.actions[k - 1].label : "rest", below}};
        }
        below = add(std::move(c), id);
        chain.push_back(below);
      }
      std::reverse(chain.begin(), chain.end());
    }
    out.chain[id] = chain;
    return chain.front();
  };
  NodeId root = build(game.root());
  out.game = Game(GraphKind::kTree, root, std::move(nodes));
  return out;
}

int TreeLevels(const Game& game) {
  std::vector<int> levels(game.num_nodes(), 1);
  const std::vector<NodeId> order = TopologicalOrder(game);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (NodeId c : game.node(*it).Children()) {
      levels[*it] = std::max(levels[*it], levels[c] + 1);
    }
  }
  return levels[game.root()];
}

TradeoffTable CombineLeaderMixed(const TradeoffTable& l, const TradeoffTable& r,
                                 std::vector<Witness>* w) {
  const std::int64_t n = static_cast<std::int64_t>(l.size());
  TradeoffTable out(n, ExtRational::NegInf());
  if (w) w->assign(n, {});
  const std::vector<Bridge> rl = BridgeMax(r, l);  // r at j < k < i in l
  const std::vector<Bridge> lr = BridgeMax(l, r);  // l at i < k < j in r
  for (std::int64_t k = 0; k < n; ++k) {
    Witness best;
    ExtRational v = l[k];
    if (v.is_finite()) best = {k, -1, 1};
    if (r[k] > v) {
      v = r[k];
      best = {-1, k, 0};
    }
    if (rl[k].value > v) {
      v = rl[k].value;
      const std::int64_t i = rl[k].right, j = rl[k].left;
      best = {i, j, Rational(k - j, i - j)};
    }
    if (lr[k].value > v) {
      v = lr[k].value;
      const std::int64_t i = lr[k].left, j = lr[k].right;
      best = {i, j, Rational(j - k, j - i)};
    }
    out[k] = v;
    if (w && v.is_finite()) (*w)[k] = best;
  }
  return out;
}

TradeoffTable CombineLeaderMixedReference(const TradeoffTable& l,
                                          const TradeoffTable& r) {
  const std::int64_t n = static_cast<std::int64_t>(l.size());
  TradeoffTable out(n, ExtRational::NegInf());
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < n; ++j) {
        // Feasible p in [lo, hi] with p * i + (1 - p) * j >= k.
        Rational lo = 0, hi = 1;
        if (i == j) {
          if (i < k) continue;
        } else if (i > j) {
          lo = std::max(Rational(0), Rational(k - j, i - j));
          if (lo > Rational(1)) continue;
        } else {
          hi = std::min(Rational(1), Rational(j - k, j - i));
          if (hi.sign() < 0) continue;
        }
        out[k] = std::max({out[k], Mix(lo, l[i], r[j]), Mix(hi, l[i], r[j])});
      }
    }
  }
  return out;
}

TradeoffTable CombineLeaderPure(const TradeoffTable& l, const TradeoffTable& r,
                                std::vector<Witness>* w) {
  const std::int64_t n = static_cast<std::int64_t>(l.size());
  TradeoffTable out(n, ExtRational::NegInf());
  if (w) w->assign(n, {});
  ExtRational v = ExtRational::NegInf();
  Witness best;
  for (std::int64_t k = n - 1; k >= 0; --k) {
    if (l[k] > v) {
      v = l[k];
      best = {k, -1, 1};
    }
    if (r[k] > v) {
      v = r[k];
      best = {-1, k, 0};
    }
    out[k] = v;
    if (w) (*w)[k] = best;
  }
  return out;
}

TradeoffTable CombineChance(const TradeoffTable& l, const TradeoffTable& r,
                            const Rational& weight, std::vector<Witness>* w) {
  const std::int64_t n = static_cast<std::int64_t>(l.size());
  TradeoffTable out(n, ExtRational::NegInf());
  if (w) w->assign(n, {});
  // Only the last index of each value matters on either side. Every pair of
  // such indices lands at floor(weight * i + (1 - weight) * j); a suffix max
  // spreads it to smaller k. Doubles only screen out pairs that clearly lose;
  // every kept comparison is exact.
  const Rational rest = Rational(1) - weight;
  // weight = wn / wden in lowest terms, when both fit.
  std::int64_t wn = 0, wden = 0;
  if (weight.is_small()) {
    wn = std::stoll(weight.NumeratorString());
    wden = std::stoll(weight.DenominatorString());
  }
  const std::vector<std::int64_t> ends_l = RunEnds(l), ends_r = RunEnds(r);
  std::vector<Rational> term_r;
  std::vector<double> term_rd;
  for (std::int64_t j : ends_r) {
    term_r.push_back(rest * r[j].value());
    term_rd.push_back(term_r.back().ToDouble());
  }
  std::vector<double> outd(n, -std::numeric_limits<double>::infinity());
  std::vector<Witness> at(n);
  for (std::int64_t i : ends_l) {
    const Rational li = weight * l[i].value();
    const double lid = li.ToDouble();
    for (std::size_t t = 0; t < ends_r.size(); ++t) {
      const std::int64_t j = ends_r[t];
      std::int64_t k;
      if (wden > 0) {
        const __int128 num = static_cast<__int128>(wn) * i +
                             static_cast<__int128>(wden - wn) * j;
        k = static_cast<std::int64_t>(num / wden);  // non-negative
      } else {
        k = (weight * i + rest * j).Floor();
      }
      const double vd = lid + term_rd[t];
      if (vd < outd[k] - 1e-9 * (1 + std::fabs(vd) + std::fabs(outd[k]))) continue;
      ExtRational v = li + term_r[t];
      if (v > out[k]) {
        out[k] = v;
        outd[k] = vd;
        at[k] = {i, j, weight};
      }
    }
  }
  for (std::int64_t k = n - 2; k >= 0; --k) {
    if (out[k + 1] > out[k]) {
      out[k] = out[k + 1];
      at[k] = at[k + 1];
    }
  }
  if (w) *w = std::move(at);
  return out;
}

TradeoffTable CombineChanceReference(const TradeoffTable& l,
                                     const TradeoffTable& r,
                                     const Rational& weight) {
  const std::int64_t n = static_cast<std::int64_t>(l.size());
  TradeoffTable out(n, ExtRational::NegInf());
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < n; ++j) {
        if (weight * i + (Rational(1) - weight) * j < Rational(k)) continue;
        if (!l[i].is_finite() || !r[j].is_finite()) continue;
        out[k] = std::max(out[k], ExtRational(weight * l[i].value() +
                                              (Rational(1) - weight) * r[j].value()));
      }
    }
  }
  return out;
}

TradeoffTable CombineFollower(const TradeoffTable& l, const TradeoffTable& r,
                              const Rational& mu_l, const Rational& mu_r,
                              std::vector<Witness>* w) {
  const std::int64_t n = static_cast<std::int64_t>(l.size());
  TradeoffTable out(n, ExtRational::NegInf());
  if (w) w->assign(n, {});
  for (std::int64_t k = 0; k < n; ++k) {
    ExtRational a = l[k] >= ExtRational(mu_r) ? l[k] : ExtRational::NegInf();
    ExtRational b = r[k] >= ExtRational(mu_l) ? r[k] : ExtRational::NegInf();
    if (b > a) {
      out[k] = b;
      if (w) (*w)[k] = {-1, k, 0};
    } else {
      out[k] = a;
      if (w && a.is_finite()) (*w)[k] = {k, -1, 1};
    }
  }
  return out;
}

namespace {

ApproxSolution Run(const Game& game, const Rational& epsilon, bool pure) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  ApproxSolution s;
  s.pure = pure;
  s.binarized = Binarize(game);
  const Game& g = s.binarized.game;
  s.punishment = ComputeMinmax(g);

  FptasParams& p = s.params;
  p.epsilon = epsilon;
  bool first = true;
  Rational hi;
  for (const Node& n : g.nodes()) {
    if (!n.is_leaf()) continue;
    if (first || n.u1 < p.shift) p.shift = n.u1;
    if (first || n.u1 > hi) hi = n.u1;
    first = false;
  }
  p.spread = hi - p.shift;
  p.levels = TreeLevels(g);
  p.scale = epsilon / Rational(p.levels);
  p.n = (p.spread / p.scale).Ceil() + 1;

  s.tables.resize(g.num_nodes());
  s.witnesses.resize(g.num_nodes());
  const std::vector<NodeId> order = TopologicalOrder(g);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = g.node(*it);
    TradeoffTable& t = s.tables[n.id];
    std::vector<Witness>* w = &s.witnesses[n.id];
    if (n.is_leaf()) {
      t.assign(p.n, ExtRational::NegInf());
      const std::int64_t top = ((n.u1 - p.shift) / p.scale).Floor();
      for (std::int64_t k = 0; k <= top && k < p.n; ++k) t[k] = n.u2;
      continue;
    }
    const std::vector<NodeId> kids = n.Children();
    if (kids.size() == 1) {
      t = s.tables[kids[0]];
      w->assign(p.n, {});
      for (std::int64_t k = 0; k < p.n; ++k) (*w)[k] = {k, -1, 1};
      continue;
    }
    const TradeoffTable& l = s.tables[kids[0]];
    const TradeoffTable& r = s.tables[kids[1]];
    switch (n.kind) {
      case NodeKind::kLeader:
        t = pure ? CombineLeaderPure(l, r, w) : CombineLeaderMixed(l, r, w);
        break;
      case NodeKind::kFollower:
        t = CombineFollower(l, r, s.punishment.mu[kids[0]],
                            s.punishment.mu[kids[1]], w);
        break;
      case NodeKind::kChance:
        t = CombineChance(l, r, n.branches[0].probability, w);
        break;
      default:
        throw GameError("fptas needs a turn-based tree");
    }
  }
  const TradeoffTable& root = s.tables[g.root()];
  s.root_index = LastFinite(root);
  if (s.root_index < 0) throw std::logic_error("empty root table");
  s.guaranteed_value = p.shift + Rational(s.root_index) * p.scale;
  s.strategy = ToOriginal(s.binarized,
                          ReconstructOnBinarized(s, g.root(), s.root_index));
  return s;
}

}  // namespace

ApproxSolution FptasBehavioral(const Game& game, const Rational& epsilon) {
  return Run(game, epsilon, false);
}

ApproxSolution FptasPure(const Game& game, const Rational& epsilon) {
  return Run(game, epsilon, true);
}

BehavioralStrategy ReconstructOnBinarized(const ApproxSolution& s, NodeId node,
                                          std::int64_t k) {
  const Game& g = s.binarized.game;
  BehavioralStrategy out = s.punishment.punish_leader;
  std::vector<std::pair<NodeId, std::int64_t>> stack{{node, k}};
  while (!stack.empty()) {
    auto [id, idx] = stack.back();
    stack.pop_back();
    const Node& n = g.node(id);
    if (n.is_leaf()) continue;
    if (!Finite(s.tables[id], idx)) {
      throw std::logic_error("reconstruction hit an empty entry at node " +
                             std::to_string(id));
    }
    const Witness& w = s.witnesses[id][idx];
    const std::vector<NodeId> kids = n.Children();
    if (n.kind == NodeKind::kLeader) {
      out.mix[id] = kids.size() == 1 ? std::vector<Rational>{1}
                                     : std::vector<Rational>{w.p, Rational(1) - w.p};
    }
    if (w.i >= 0) stack.push_back({kids[0], w.i});
    if (w.j >= 0) stack.push_back({kids[1], w.j});
  }
  return out;
}

BehavioralStrategy ToOriginal(const BinarizedGame& b,
                              const BehavioralStrategy& s) {
  BehavioralStrategy out{Player::kLeader, {}};
  for (const auto& [id, chain] : b.chain) {
    const Node& top = b.game.node(chain.front());
    if (top.kind != NodeKind::kLeader) continue;
    std::vector<Rational> mix;
    Rational rest = 1;
    for (NodeId c : chain) {
      const std::vector<Rational>& m = s.mix.at(c);
      mix.push_back(rest * m[0]);
      if (m.size() > 1) rest *= m[1];
    }
    if (chain.size() > 1 || top.actions.size() == 2) mix.push_back(rest);
    out.mix[id] = mix;
  }
  return out;
}

}  // namespace stackel
