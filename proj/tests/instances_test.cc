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

#include <gtest/gtest.h>

#include "stackel/game_io.h"
#include "stackel/minmax.h"

namespace stackel {
namespace {

TEST(GenRandomTest, SmallTreeValidates) {
  GenParams p;
  p.seed = 1;
  p.internal_nodes = 8;
  Game g = GenRandom(p);
  EXPECT_TRUE(Validate(g).ok());
  EXPECT_EQ(Classify(g),
            (GameClass{GraphKind::kTree, Information::kTurnBased, false}));
}

TEST(GenRandomTest, Deterministic) {
  GenParams p;
  p.seed = 99;
  p.chance_fraction = Rational(1, 3);
  EXPECT_EQ(SerializeGame(GenRandom(p)), SerializeGame(GenRandom(p)));
  GenParams q = p;
  q.seed = 100;
  EXPECT_NE(SerializeGame(GenRandom(p)), SerializeGame(GenRandom(q)));
}

TEST(GenRandomTest, ContradictoryParams) {
  GenParams p;
  p.concurrent_fraction = Rational(1, 2);
  EXPECT_THROW(GenRandom(p), std::invalid_argument);
  p.info = Information::kConcurrent;
  EXPECT_NO_THROW(GenRandom(p));
}

TEST(GenRandomTest, ThousandSeedsValidate) {
  int dags = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenParams p;
    p.seed = seed;
    p.internal_nodes = 1 + static_cast<int>(seed % 12);
    p.chance_fraction = seed % 3 == 0 ? Rational(1, 4) : Rational(0);
    if (seed % 5 == 0) {
      p.info = Information::kConcurrent;
      p.concurrent_fraction = Rational(1, 3);
    }
    p.graph = seed % 2 ? GraphKind::kDag : GraphKind::kTree;
    Game g = GenRandom(p);
    ASSERT_TRUE(Validate(g).ok()) << "seed " << seed;
    GameClass c = Classify(g);
    if (p.info == Information::kConcurrent) {
      EXPECT_EQ(c.info, Information::kConcurrent);
    } else {
      EXPECT_EQ(c.info, Information::kTurnBased);
    }
    if (p.graph == GraphKind::kTree) EXPECT_EQ(c.graph, GraphKind::kTree);
    if (c.graph == GraphKind::kDag) ++dags;
  }
  EXPECT_GT(dags, 100);
}

TEST(GenBalancedTreeTest, Shape) {
  Game g = GenBalancedTree(3, 2, 5);
  int leaves = 0;
  for (const Node& n : g.nodes()) leaves += n.is_leaf();
  EXPECT_EQ(leaves, 9);
  EXPECT_EQ(g.num_nodes(), 13u);
  EXPECT_TRUE(Validate(g).ok());
}

TEST(KnapsackTest, UnitItemsConversion) {
  KnapsackInstance k{{2}, {3}, 2, 3};
  KnapsackInstance u = KnapsackToUnitItems(k);
  EXPECT_EQ(u.weights, (std::vector<std::int64_t>{2, 1, 1}));
  EXPECT_EQ(u.values, (std::vector<std::int64_t>{9, 1, 1}));
  EXPECT_EQ(u.budget, 2);
  EXPECT_EQ(u.target, 9);
  EXPECT_TRUE(IsUnitItems(u));
  KnapsackInstance zero{{3, 4}, {5, 6}, 0, 1};
  KnapsackInstance z = KnapsackToUnitItems(zero);
  EXPECT_EQ(z.values, zero.values);
  EXPECT_EQ(z.weights, zero.weights);
}

// Unit items let the optimum be read off: the original optimum is the
// scaled optimum divided by budget + 1, rounded down, since unit items add
// at most budget < budget + 1.
TEST(KnapsackTest, ConversionPreservesOptimum) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    KnapsackInstance k;
    int n = 1 + static_cast<int>(UniformIndex(rng, 4));
    for (int i = 0; i < n; ++i) {
      k.weights.push_back(UniformInt(rng, 1, 5));
      k.values.push_back(UniformInt(rng, 1, 6));
    }
    k.budget = UniformInt(rng, 0, 3);
    KnapsackInstance u = KnapsackToUnitItems(k);
    ASSERT_TRUE(IsUnitItems(u));
    std::int64_t orig = KnapsackOptimum(k);
    std::int64_t unit = KnapsackOptimum(u);
    EXPECT_EQ(unit / (k.budget + 1), orig);
    EXPECT_GE(unit, (k.budget + 1) * orig);
  }
}

TEST(ReductionTest, TwoUnitItems) {
  KnapsackInstance k{{1, 1}, {1, 1}, 1, 1};
  EXPECT_EQ(ReductionConstant(k), 3);
  Game g = GenKnapsackReduction(k);
  ASSERT_TRUE(Validate(g).ok());
  const Node& root = g.node(g.root());
  ASSERT_EQ(root.kind, NodeKind::kConcurrent);
  ASSERT_EQ(root.rows.size(), 2u);
  ASSERT_EQ(root.cols.size(), 3u);
  EXPECT_EQ(g.node(root.Cell(0, 1)).u2, Rational(2));
  EXPECT_EQ(g.node(root.Cell(0, 2)).u2, Rational(-4));
  EXPECT_EQ(g.node(root.Cell(1, 1)).u2, Rational(-4));
  const Node& sub = g.node(root.Cell(0, 0));
  ASSERT_EQ(sub.kind, NodeKind::kConcurrent);
  EXPECT_EQ(g.node(sub.Cell(0, 0)).u1, Rational(2));
  EXPECT_EQ(g.node(sub.Cell(0, 0)).u2, Rational(-2));
  EXPECT_EQ(g.node(sub.Cell(0, 1)).u1, Rational(0));
  EXPECT_EQ(g.node(sub.Cell(0, 1)).u2, Rational(-2));
  EXPECT_EQ(g.node(sub.Cell(1, 0)).u2, Rational(-2));
  EXPECT_EQ(g.node(sub.Cell(1, 1)).u2, Rational(0));
}

TEST(ReductionTest, ConstantExceedsBounds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    KnapsackInstance k = RandomUnitItems(seed, 1 + static_cast<int>(seed % 6));
    ASSERT_TRUE(IsUnitItems(k));
    std::int64_t m = ReductionConstant(k);
    std::int64_t n = static_cast<std::int64_t>(k.weights.size());
    for (std::size_t i = 0; i < k.weights.size(); ++i) {
      EXPECT_GT(m, k.budget * n * k.values[i]);
      EXPECT_GT(m, n * k.weights[i]);
    }
    EXPECT_TRUE(Validate(GenKnapsackReduction(k)).ok());
  }
  EXPECT_THROW(GenKnapsackReduction({{2}, {3}, 1, 0}), std::invalid_argument);
}

TEST(ExampleFig1Test, ShapeAndThreats) {
  Game g = ExampleFig1();
  ASSERT_TRUE(Validate(g).ok());
  MinmaxTable t = ComputeMinmax(g);
  const Node& s1 = g.node(0);
  ASSERT_EQ(s1.kind, NodeKind::kFollower);
  const Node& s2 = g.node(s1.actions[0].child);
  NodeId s4 = s2.actions[1].child;
  EXPECT_EQ(t.mu[s4], Rational(1));
  EXPECT_EQ(g.node(s1.actions[1].child).u2, Rational(2));
}

}  // namespace
}  // namespace stackel
