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

#include <gtest/gtest.h>

#include <random>

#include "stackel/instances.h"
#include "stackel/oracle.h"
#include "test_util.h"

namespace stackel {
namespace {

using testing::R;

void ExpectFlow(const Game& g, const FlowSolution& f) {
  EXPECT_EQ(f.delta[g.root()], Rational(1));
  for (const Node& n : g.nodes()) {
    EXPECT_GE(f.delta[n.id], Rational(0));
    EXPECT_LE(f.delta[n.id], Rational(1));
    if (n.is_leaf()) continue;
    Rational sum;
    for (NodeId c : n.Children()) sum += f.delta[c];
    EXPECT_EQ(sum, f.delta[n.id]) << "node " << n.id;
  }
  DeviationReport rep = VerifyNoDeviation(g, f.compact);
  EXPECT_TRUE(rep.ok()) << rep.violations.size() << " violations";
  CompactValues v = EvaluateCompact(g, f.compact);
  EXPECT_EQ(v.u1[g.root()], f.leader_value);
  EXPECT_EQ(v.u2[g.root()], f.v2[g.root()]);
}

TEST(SefceLpTest, SingleLeaf) {
  GameBuilder b;
  NodeId z = b.Leaf(4, 1);
  Game g = b.Build(z);
  FlowSolution f = SolveSefceConcurrent(g);
  EXPECT_EQ(f.leader_value, Rational(4));
}

TEST(SefceLpTest, IndifferentFollower) {
  GameBuilder b;
  std::vector<NodeId> cells;
  for (int u1 : {1, 7, 3, 2}) cells.push_back(b.Leaf(u1, 5));
  Game g = b.Build(b.Concurrent({"u", "d"}, {"l", "r"}, cells));
  FlowSolution f = SolveSefceConcurrent(g);
  EXPECT_EQ(f.leader_value, Rational(7));
  ExpectFlow(g, f);
}

TEST(SefceLpTest, ExampleFig1) {
  Game g = ExampleFig1();
  FlowSolution f = SolveSefceConcurrent(g);
  EXPECT_EQ(f.leader_value, R("3/2"));
  ExpectFlow(g, f);
}

TEST(SefceLpTest, KnapsackReductionAtLeastOptimum) {
  Game g = GenKnapsackReduction({{1, 1}, {1, 1}, 1, 1});
  FlowSolution f = SolveSefceConcurrent(g);
  EXPECT_GE(f.leader_value, Rational(1));
  ExpectFlow(g, f);
}

TEST(SefceLpTest, RejectsDag) {
  GameBuilder b;
  NodeId z = b.Leaf(0, 0);
  NodeId y = b.Leaf(1, 0);
  NodeId l = b.Leader({z, y});
  NodeId f = b.Follower({l, z});
  Game g = b.Build(b.Leader({f, l}), GraphKind::kDag);
  EXPECT_THROW(SolveSefceConcurrent(g), GameError);
}

TEST(SefceLpTest, RandomTwoByTwoMatchesOracle) {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 60; ++iter) {
    GameBuilder b;
    std::vector<NodeId> cells;
    for (int k = 0; k < 4; ++k) {
      cells.push_back(b.Leaf(UniformInt(rng, -3, 6), UniformInt(rng, -3, 6)));
    }
    Game g = b.Build(b.Concurrent({"u", "d"}, {"l", "r"}, cells));
    FlowSolution f = SolveSefceConcurrent(g);
    EXPECT_EQ(f.leader_value, BruteForceSefce(g).value);
    ExpectFlow(g, f);
  }
}

TEST(SefceLpTest, RandomConcurrentTreesMatchOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenParams p;
    p.seed = 900 + seed;
    p.internal_nodes = 2 + static_cast<int>(seed % 6);
    p.info = Information::kConcurrent;
    p.concurrent_fraction = Rational(1, 2);
    p.chance_fraction = seed % 3 == 0 ? Rational(1, 5) : Rational(0);
    p.utility_hi = 9;
    Game g = GenRandom(p);
    FlowSolution f = SolveSefceConcurrent(g);
    ASSERT_EQ(f.leader_value, BruteForceSefce(g).value) << "seed " << p.seed;
    ExpectFlow(g, f);
  }
}

TEST(SefceLpTest, TurnBasedMatchesTreeSolver) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GenParams p;
    p.seed = 1200 + seed;
    p.internal_nodes = 2 + static_cast<int>(seed % 10);
    p.chance_fraction = seed % 2 ? Rational(1, 4) : Rational(0);
    p.utility_hi = 12;
    Game g = GenRandom(p);
    FlowSolution f = SolveSefceConcurrent(g);
    EXPECT_EQ(f.leader_value, SolveSefceTree(g).value.y) << "seed " << p.seed;
    ExpectFlow(g, f);
  }
}

TEST(SefceLpTest, Deterministic) {
  GenParams p;
  p.seed = 5;
  p.info = Information::kConcurrent;
  p.concurrent_fraction = Rational(1, 2);
  Game g = GenRandom(p);
  FlowSolution a = SolveSefceConcurrent(g);
  FlowSolution b = SolveSefceConcurrent(g);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.v2, b.v2);
  EXPECT_EQ(ToLpFormat(BuildSefceLp(g, ComputeMinmax(g))),
            ToLpFormat(BuildSefceLp(g, ComputeMinmax(g))));
}

}  // namespace
}  // namespace stackel
