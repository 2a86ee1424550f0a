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

#include "stackel/instances.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace stackel {

std::uint64_t UniformIndex(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex over an empty range");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  while (true) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo,
                        std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  UniformIndex(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Bernoulli(std::mt19937_64& rng, const Rational& p) {
  if (p.sign() <= 0) return false;
  if (p >= Rational(1)) return true;
  // Compare a uniform draw on a 2^32 grid against p.
  constexpr std::int64_t kGrid = std::int64_t{1} << 32;
  Rational u(static_cast<std::int64_t>(UniformIndex(rng, kGrid)), kGrid);
  return u < p;
}

namespace {

// Mutable graph used while generating; converted to a Game by BFS numbering.
struct Draft {
  struct DNode {
    NodeKind kind = NodeKind::kLeaf;
    Rational u1, u2;
    std::vector<int> children;
    std::vector<Rational> probs;  // chance
    int rows = 0, cols = 0;       // concurrent
    int depth = 0;
  };
  std::vector<DNode> nodes;
  int root = 0;

  int Add(DNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  Game ToGame(GraphKind graph) const {
    std::vector<int> id(nodes.size(), -1);
    std::vector<int> order;
    std::deque<int> queue{root};
    id[root] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (int c : nodes[v].children) {
        if (id[c] < 0) {
          id[c] = static_cast<int>(order.size() + queue.size());
          queue.push_back(c);
        }
      }
    }
    std::vector<Node> out(order.size());
    for (int v : order) {
      const DNode& d = nodes[v];
      Node& n = out[id[v]];
      n.id = static_cast<NodeId>(id[v]);
      n.kind = d.kind;
      switch (d.kind) {
        case NodeKind::kLeaf:
          n.u1 = d.u1;
          n.u2 = d.u2;
          break;
        case NodeKind::kLeader:
        case NodeKind::kFollower:
          for (std::size_t i = 0; i < d.children.size(); ++i) {
            n.actions.push_back(
                {"a" + std::to_string(i), static_cast<NodeId>(id[d.children[i]])});
          }
          break;
        case NodeKind::kConcurrent:
          for (int r = 0; r < d.rows; ++r) n.rows.push_back("r" + std::to_string(r));
          for (int c = 0; c < d.cols; ++c) n.cols.push_back("c" + std::to_string(c));
          for (int c : d.children) n.cells.push_back(static_cast<NodeId>(id[c]));
          break;
        case NodeKind::kChance:
          for (std::size_t i = 0; i < d.children.size(); ++i) {
            n.branches.push_back(
                {d.probs[i], static_cast<NodeId>(id[d.children[i]])});
          }
          break;
      }
    }
    return Game(graph, 0, std::move(out));
  }
};

void CheckFraction(const Rational& f, const char* name) {
  if (f.sign() < 0 || f > Rational(1)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

Game GenRandom(const GenParams& p) {
  CheckFraction(p.chance_fraction, "chance fraction");
  CheckFraction(p.concurrent_fraction, "concurrent fraction");
  CheckFraction(p.follower_fraction, "follower fraction");
  CheckFraction(p.merge_fraction, "merge fraction");
  if (p.internal_nodes < 0) throw std::invalid_argument("negative node count");
  if (p.max_branching < 2) throw std::invalid_argument("branching below 2");
  if (p.utility_lo > p.utility_hi) {
    throw std::invalid_argument("empty utility range");
  }
  if (p.info == Information::kTurnBased && p.concurrent_fraction.sign() > 0) {
    throw std::invalid_argument(
        "concurrent fraction > 0 contradicts a turn-based class");
  }
  if (p.info == Information::kConcurrent && p.internal_nodes == 0) {
    throw std::invalid_argument("a concurrent game needs an internal node");
  }
  std::mt19937_64 rng(p.seed);
  Draft d;
  auto leaf = [&](int depth) {
    Draft::DNode n;
    n.u1 = UniformInt(rng, p.utility_lo, p.utility_hi);
    n.u2 = UniformInt(rng, p.utility_lo, p.utility_hi);
    n.depth = depth;
    return n;
  };
  if (p.internal_nodes == 0) {
    d.Add(leaf(0));
    return d.ToGame(p.graph);
  }

  const int n = p.internal_nodes;
  std::vector<NodeKind> kind(n);
  bool any_concurrent = false;
  for (int i = 0; i < n; ++i) {
    if (Bernoulli(rng, p.chance_fraction)) {
      kind[i] = NodeKind::kChance;
    } else if (Bernoulli(rng, p.concurrent_fraction)) {
      kind[i] = NodeKind::kConcurrent;
      any_concurrent = true;
    } else {
      kind[i] = Bernoulli(rng, p.follower_fraction) ? NodeKind::kFollower
                                                     : NodeKind::kLeader;
    }
  }
  if (p.info == Information::kConcurrent && !any_concurrent) {
    kind[UniformIndex(rng, n)] = NodeKind::kConcurrent;
  }
  std::vector<int> rows(n, 0), cols(n, 0), arity(n, 0);
  for (int i = 0; i < n; ++i) {
    if (kind[i] == NodeKind::kConcurrent) {
      do {
        rows[i] = static_cast<int>(UniformInt(rng, 1, 3));
        cols[i] = static_cast<int>(UniformInt(rng, 1, 3));
      } while (rows[i] * cols[i] < 2 || rows[i] * cols[i] > 6);
      arity[i] = rows[i] * cols[i];
    } else {
      arity[i] = static_cast<int>(UniformInt(rng, 2, p.max_branching));
    }
  }
  // Internal node i > 0 hangs off a random earlier node with a free slot.
  std::vector<std::vector<int>> internal_kids(n);
  std::vector<int> depth(n, 0);
  for (int i = 1; i < n; ++i) {
    std::vector<int> open;
    for (int j = 0; j < i; ++j) {
      if (static_cast<int>(internal_kids[j].size()) < arity[j]) open.push_back(j);
    }
    int parent = open[UniformIndex(rng, open.size())];
    internal_kids[parent].push_back(i);
    depth[i] = depth[parent] + 1;
  }
  // Draft ids for internal nodes are 0..n-1; leaves follow.
  for (int i = 0; i < n; ++i) {
    Draft::DNode node;
    node.kind = kind[i];
    node.rows = rows[i];
    node.cols = cols[i];
    node.depth = depth[i];
    d.Add(std::move(node));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> slots(arity[i], -1);
    for (int c : internal_kids[i]) {
      std::size_t s;
      do {
        s = UniformIndex(rng, slots.size());
      } while (slots[s] >= 0);
      slots[s] = c;
    }
    for (int& s : slots) {
      if (s < 0) s = d.Add(leaf(depth[i] + 1));
    }
    d.nodes[i].children = slots;
    if (kind[i] == NodeKind::kChance) {
      std::vector<std::int64_t> w;
      std::int64_t total = 0;
      for (int k = 0; k < arity[i]; ++k) {
        w.push_back(UniformInt(rng, 1, 3));
        total += w.back();
      }
      for (std::int64_t x : w) d.nodes[i].probs.push_back(Rational(x, total));
    }
  }
  if (p.graph == GraphKind::kDag) {
    std::vector<std::vector<int>> by_depth;
    for (std::size_t v = 0; v < d.nodes.size(); ++v) {
      std::size_t dep = static_cast<std::size_t>(d.nodes[v].depth);
      if (by_depth.size() <= dep) by_depth.resize(dep + 1);
      by_depth[dep].push_back(static_cast<int>(v));
    }
    // Only leaf edges are redirected so every internal node stays reachable.
    for (int i = 0; i < n; ++i) {
      std::size_t next = static_cast<std::size_t>(d.nodes[i].depth) + 1;
      for (int& child : d.nodes[i].children) {
        if (child < n || !Bernoulli(rng, p.merge_fraction)) continue;
        std::vector<int> cand;
        for (int v : by_depth[next]) {
          const auto& kids = d.nodes[i].children;
          if (std::find(kids.begin(), kids.end(), v) == kids.end()) {
            cand.push_back(v);
          }
        }
        if (!cand.empty()) child = cand[UniformIndex(rng, cand.size())];
      }
    }
  }
  return d.ToGame(p.graph);
}

Game GenBalancedTree(int branching, int depth, std::uint64_t seed,
                     std::int64_t utility_hi) {
  if (branching < 1 || depth < 0) {
    throw std::invalid_argument("balanced tree needs branching >= 1");
  }
  std::mt19937_64 rng(seed);
  Draft d;
  std::vector<int> level{d.Add({})};
  for (int l = 0; l <= depth; ++l) {
    std::vector<int> next;
    for (int v : level) {
      if (l == depth) {
        d.nodes[v].kind = NodeKind::kLeaf;
        d.nodes[v].u1 = UniformInt(rng, 0, utility_hi);
        d.nodes[v].u2 = UniformInt(rng, 0, utility_hi);
        continue;
      }
      d.nodes[v].kind = l % 2 == 0 ? NodeKind::kLeader : NodeKind::kFollower;
      for (int k = 0; k < branching; ++k) {
        int c = d.Add({});
        d.nodes[v].children.push_back(c);
        next.push_back(c);
      }
    }
    level = std::move(next);
  }
  return d.ToGame(GraphKind::kTree);
}

bool IsUnitItems(const KnapsackInstance& k) {
  if (k.weights.size() != k.values.size() || k.budget < 0) return false;
  std::int64_t units = 0;
  for (std::size_t i = 0; i < k.weights.size(); ++i) {
    if (k.weights[i] <= 0 || k.values[i] <= 0) return false;
    if (k.weights[i] == 1 && k.values[i] == 1) ++units;
  }
  return units >= k.budget;
}

KnapsackInstance KnapsackToUnitItems(const KnapsackInstance& k) {
  if (k.weights.size() != k.values.size()) {
    throw std::invalid_argument("weights and values differ in length");
  }
  KnapsackInstance out;
  out.budget = k.budget;
  out.target = (k.budget + 1) * k.target;
  out.weights = k.weights;
  for (std::int64_t v : k.values) out.values.push_back((k.budget + 1) * v);
  for (std::int64_t i = 0; i < k.budget; ++i) {
    out.weights.push_back(1);
    out.values.push_back(1);
  }
  return out;
}

std::int64_t KnapsackOptimum(const KnapsackInstance& k) {
  const std::size_t n = k.weights.size();
  if (n > 30) throw std::invalid_argument("too many items to enumerate");
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t w = 0, v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        w += k.weights[i];
        v += k.values[i];
      }
    }
    if (w <= k.budget) best = std::max(best, v);
  }
  return best;
}

KnapsackInstance RandomUnitItems(std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("need at least one item");
  std::mt19937_64 rng(seed);
  KnapsackInstance k;
  k.budget = UniformInt(rng, 1, n);
  for (int i = 0; i < n; ++i) {
    if (i < k.budget) {
      k.weights.push_back(1);
      k.values.push_back(1);
    } else {
      k.weights.push_back(UniformInt(rng, 1, 4));
      k.values.push_back(UniformInt(rng, 1, 5));
    }
  }
  // Interleave unit items with the others.
  for (int i = n - 1; i > 0; --i) {
    std::size_t j = UniformIndex(rng, static_cast<std::uint64_t>(i) + 1);
    std::swap(k.weights[i], k.weights[j]);
    std::swap(k.values[i], k.values[j]);
  }
  return k;
}

std::int64_t ReductionConstant(const KnapsackInstance& unit) {
  const std::int64_t n = static_cast<std::int64_t>(unit.weights.size());
  std::int64_t m = 0;
  for (std::size_t i = 0; i < unit.weights.size(); ++i) {
    m = std::max({m, unit.budget * n * unit.values[i], n * unit.weights[i]});
  }
  return m + 1;
}

Game GenKnapsackReduction(const KnapsackInstance& unit) {
  if (!IsUnitItems(unit)) {
    throw std::invalid_argument(
        "knapsack reduction needs at least `budget` unit items");
  }
  const std::int64_t n = static_cast<std::int64_t>(unit.weights.size());
  if (n == 0) throw std::invalid_argument("knapsack instance without items");
  const std::int64_t w = unit.budget;
  const std::int64_t m = ReductionConstant(unit);
  GameBuilder b;
  std::vector<NodeId> sub;
  for (std::int64_t i = 0; i < n; ++i) {
    Rational take_u1 = n * unit.values[i];
    Rational take_u2 = -n * unit.weights[i];
    NodeId pl = b.Leaf(take_u1, take_u2);
    NodeId pr = b.Leaf(0, take_u2);
    NodeId ml = b.Leaf(take_u1, take_u2);
    NodeId mr = b.Leaf(0, 0);
    sub.push_back(b.Concurrent({"plus", "minus"}, {"L", "R"}, {pl, pr, ml, mr}));
  }
  std::vector<std::string> rows, cols{"f0"};
  for (std::int64_t i = 1; i <= n; ++i) {
    rows.push_back("l" + std::to_string(i));
    cols.push_back("f" + std::to_string(i));
  }
  std::vector<NodeId> cells;
  for (std::int64_t i = 1; i <= n; ++i) {
    cells.push_back(sub[i - 1]);
    for (std::int64_t j = 1; j <= n; ++j) {
      cells.push_back(i == j ? b.Leaf(0, n * m - w - m) : b.Leaf(0, -w - m));
    }
  }
  NodeId root = b.Concurrent(rows, cols, cells);
  return RenumberFromRoot(b.Build(root));
}

Game ExampleFig1() {
  GameBuilder b;
  NodeId s3a = b.Leaf(4, 0);
  NodeId s3b = b.Leaf(0, 2);
  NodeId s4a = b.Leaf(0, 1);
  NodeId s4b = b.Leaf(1, 3);
  NodeId s3 = b.Leader({{"l", s3a}, {"r", s3b}});
  NodeId s4 = b.Leader({{"l", s4a}, {"r", s4b}});
  NodeId s2 = b.Follower({{"l", s3}, {"r", s4}});
  NodeId out = b.Leaf(0, 2);
  NodeId s1 = b.Follower({{"l", s2}, {"r", out}});
  return RenumberFromRoot(b.Build(s1));
}

}  // namespace stackel
