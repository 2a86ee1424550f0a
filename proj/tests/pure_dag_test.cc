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

#include <gtest/gtest.h>

#include "stackel/instances.h"
#include "stackel/oracle.h"
#include "test_util.h"

namespace stackel {
namespace {

TEST(CapacityTest, CapacityExample) {
  Game g = testing::CapacityExample();
  CapacityTable c = ComputeCapacities(g, ComputeMinmax(g));
  EXPECT_EQ(c.gamma[4], ExtRational::NegInf());
  EXPECT_EQ(c.gamma[3], ExtRational::NegInf());
  EXPECT_EQ(c.gamma[0], ExtRational::NegInf());
  EXPECT_EQ(c.gamma[1], ExtRational(3));
  EXPECT_EQ(c.gamma[2], ExtRational(1));
  EXPECT_EQ(PossibleOutcomes(g, c), (std::vector<NodeId>{0, 2}));
}

TEST(CapacityTest, SingleChildFollower) {
  GameBuilder b;
  NodeId z = b.Leaf(1, 1);
  NodeId f = b.Follower({z});
  Game g = b.Build(f);
  EXPECT_EQ(ComputeCapacities(g, ComputeMinmax(g)).gamma[z],
            ExtRational::NegInf());
}

TEST(CapacityTest, LeaderChain) {
  GameBuilder b;
  NodeId z = b.Leaf(1, 1);
  NodeId l1 = b.Leader({z});
  NodeId l2 = b.Leader({l1});
  Game g = b.Build(l2);
  CapacityTable c = ComputeCapacities(g, ComputeMinmax(g));
  for (const ExtRational& x : c.gamma) EXPECT_EQ(x, ExtRational::NegInf());
}

TEST(CapacityTest, RejectsChance) {
  GameBuilder b;
  NodeId x = b.Leaf(0, 0);
  NodeId y = b.Leaf(1, 1);
  NodeId c = b.Chance({{Rational(1, 2), x}, {Rational(1, 2), y}});
  Game g = b.Build(c);
  EXPECT_THROW(ComputeCapacities(g, ComputeMinmax(g)), GameError);
  EXPECT_THROW(SolvePureDag(g), GameError);
}

TEST(SolvePureDagTest, CapacityExample) {
  PureCommitmentSolution s = SolvePureDag(testing::CapacityExample());
  EXPECT_EQ(s.chosen_leaf, 0u);
  EXPECT_EQ(s.leader_value, Rational(2));
  EXPECT_EQ(s.follower_value, Rational(0));
}

TEST(SolvePureDagTest, LeaderRoot) {
  PureCommitmentSolution s = SolvePureDag(testing::TwoLeafGame(3, 0, 1, 5));
  EXPECT_EQ(s.leader_value, Rational(3));
}

TEST(SolvePureDagTest, FollowerTieGoesToLeader) {
  GameBuilder b;
  NodeId x = b.Leaf(5, 2);
  NodeId y = b.Leaf(0, 2);
  Game g = b.Build(b.Follower({x, y}));
  PureCommitmentSolution s = SolvePureDag(g);
  EXPECT_EQ(s.leader_value, Rational(5));
  EXPECT_EQ(BruteForcePure(g).leader_value, Rational(5));
  // Both leaves are best-response outcomes, so both are possible.
  CapacityTable c = ComputeCapacities(g, ComputeMinmax(g));
  EXPECT_EQ(PossibleOutcomes(g, c), (std::vector<NodeId>{x, y}));
  EXPECT_EQ(PureReachableLeaves(g), (std::set<NodeId>{x, y}));
}

TEST(SolvePureDagTest, MatchesBruteForceOnRandomDags) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenParams p;
    p.seed = 7000 + seed;
    p.internal_nodes = 2 + static_cast<int>(seed % 9);
    p.graph = GraphKind::kDag;
    p.merge_fraction = Rational(1, 2);
    Game g = GenRandom(p);
    PureCommitmentSolution s = SolvePureDag(g);
    PureCommitmentSolution o = BruteForcePure(g);
    ASSERT_EQ(s.leader_value, o.leader_value) << "seed " << p.seed;
    EXPECT_EQ(s.follower_value, o.follower_value) << "seed " << p.seed;
    CapacityTable c = ComputeCapacities(g, ComputeMinmax(g));
    std::vector<NodeId> poss = PossibleOutcomes(g, c);
    std::set<NodeId> reach = PureReachableLeaves(g);
    EXPECT_EQ(std::set<NodeId>(poss.begin(), poss.end()), reach)
        << "seed " << p.seed;
    ProfileValue v = EvaluateProfile(g, ToBehavioral(g, s.leader),
                                     ToBehavioral(g, s.follower));
    ASSERT_EQ(v.leaf_probs.size(), 1u);
    EXPECT_EQ(v.leaf_probs.begin()->first, s.chosen_leaf);
  }
}

TEST(BruteForcePureTest, RefusesOverBudget) {
  GenParams p;
  p.internal_nodes = 12;
  OracleBudget tight;
  tight.max_decision_nodes = 4;
  EXPECT_THROW(BruteForcePure(GenRandom(p), tight), BudgetError);
}

}  // namespace
}  // namespace stackel
