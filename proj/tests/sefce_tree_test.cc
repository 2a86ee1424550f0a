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

#include <gtest/gtest.h>

#include "stackel/instances.h"
#include "stackel/oracle.h"
#include "test_util.h"

namespace stackel {
namespace {

using testing::R;

void ExpectSound(const Game& g, const CompactSefce& c) {
  DeviationReport rep = VerifyNoDeviation(g, c);
  EXPECT_TRUE(rep.ok()) << rep.violations.size() << " violations";
  CompactValues v = EvaluateCompact(g, c);
  EXPECT_EQ(v.u1[g.root()], c.value.y);
  EXPECT_EQ(v.u2[g.root()], c.value.x);
  for (const auto* s : {&c.leader, &c.follower}) {
    for (const auto& [id, mix] : s->mix) {
      int support = 0;
      for (const Rational& x : mix) support += x.sign() > 0;
      EXPECT_LE(support, 2) << "node " << id;
    }
  }
}

TEST(UpwardPassTest, SingleLeaf) {
  GameBuilder b;
  NodeId z = b.Leaf(3, 7);
  Game g = b.Build(z);
  SefceHulls h = UpwardPass(g, ComputeMinmax(g));
  EXPECT_EQ(h.hull[z].vertices, (std::vector<Point>{{7, 3}}));
  CompactSefce c = SolveSefceTree(g);
  EXPECT_EQ(c.value.y, Rational(3));
  EXPECT_TRUE(c.leader.mix.empty());
}

TEST(UpwardPassTest, FollowerRootRestriction) {
  Game g = testing::FollowerRootExample();
  SefceHulls h = UpwardPass(g, ComputeMinmax(g));
  const Node& root = g.node(g.root());
  const auto& r = h.restricted.at(root.id);
  ASSERT_TRUE(r[0].has_value());
  EXPECT_EQ(r[0]->vertices, (std::vector<Point>{{1, 2}, {2, 0}}));
  ASSERT_TRUE(r[1].has_value());
  EXPECT_EQ(r[1]->vertices, (std::vector<Point>{{1, 1}}));
  EXPECT_EQ(MaxYPoint(h.hull[root.id]), (Point{1, 2}));
}

TEST(SolveSefceTreeTest, FollowerRoot) {
  Game g = testing::FollowerRootExample();
  CompactSefce c = SolveSefceTree(g);
  EXPECT_EQ(c.value, (Point{1, 2}));
  const Node& root = g.node(g.root());
  EXPECT_EQ(c.follower.mix.at(root.id), (std::vector<Rational>{1, 0}));
  EXPECT_EQ(c.leader.mix.at(root.actions[0].child),
            (std::vector<Rational>{R("1/2"), R("1/2")}));
  EXPECT_EQ(c.punishment.mu[root.actions[1].child], Rational(1));
  ExpectSound(g, c);
  EXPECT_EQ(BruteForceSefce(g).value, Rational(2));
}

TEST(SolveSefceTreeTest, ExampleFig1) {
  Game g = ExampleFig1();
  SefceHulls h;
  CompactSefce c = SolveSefceTree(g, &h);
  EXPECT_EQ(c.value, (Point{2, R("3/2")}));
  const Node& s1 = g.node(g.root());
  NodeId s2 = s1.actions[0].child;
  EXPECT_EQ(c.follower.mix.at(s2), (std::vector<Rational>{R("1/2"), R("1/2")}));
  ExpectSound(g, c);
  EXPECT_EQ(BruteForceSefce(g).value, R("3/2"));

  ExplicitDistribution d = ExpandCompact(g, c);
  Rational total;
  for (const ProfileWeight& w : d.support) total += w.probability;
  EXPECT_EQ(total, Rational(1));
  EXPECT_EQ(LeafDistribution(g, d), EvaluateCompact(g, c).leaf_probs);
}

TEST(VerifyNoDeviationTest, DominatedRecommendationFlagged) {
  // Follower told to take (5,0) while the other leaf gives it 3.
  GameBuilder b;
  NodeId x = b.Leaf(5, 0);
  NodeId y = b.Leaf(0, 3);
  NodeId f = b.Follower({x, y});
  Game g = b.Build(f);
  CompactSefce c;
  c.punishment = ComputeMinmax(g);
  c.on_path = {f, x};
  c.follower.mix[f] = {1, 0};
  DeviationReport rep = VerifyNoDeviation(g, c);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].gain, Rational(3));
}

TEST(VerifyNoDeviationTest, PunishmentEverywhereIsClean) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenParams p;
    p.seed = seed;
    p.chance_fraction = Rational(1, 4);
    Game g = GenRandom(p);
    CompactSefce c;
    c.punishment = ComputeMinmax(g);
    EXPECT_TRUE(VerifyNoDeviation(g, c).ok());
  }
}

TEST(VerifyNoDeviationTest, MissingRecommendationIsAnError) {
  Game g = testing::FollowerRootExample();
  CompactSefce c;
  c.punishment = ComputeMinmax(g);
  c.on_path = {g.root()};
  DeviationReport rep = VerifyNoDeviation(g, c);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.errors.size(), 1u);
}

TEST(ExpandCompactTest, RefusesLargeGames) {
  GenParams p;
  p.internal_nodes = 20;
  Game g = GenRandom(p);
  CompactSefce c = SolveSefceTree(g);
  EXPECT_THROW(ExpandCompact(g, c), std::length_error);
}

TEST(SolveSefceTreeTest, MatchesOracleOnRandomTrees) {
  int strict = 0;
  std::size_t widest = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    GenParams p;
    p.seed = 500 + seed;
    p.internal_nodes = 3 + static_cast<int>(seed % 8);
    p.utility_hi = 20;
    p.chance_fraction = seed % 2 ? Rational(1, 4) : Rational(0);
    Game g = GenRandom(p);
    CompactSefce c = SolveSefceTree(g);
    ExpectSound(g, c);
    SefceOracleResult o = BruteForceSefce(g);
    ASSERT_EQ(c.value.y, o.value) << "seed " << p.seed;
    if (CountDecisionNodes(g) <= 8) {
      EXPECT_EQ(LeafDistribution(g, ExpandCompact(g, c)),
                EvaluateCompact(g, c).leaf_probs);
    }
    if (!Classify(g).chance) {
      Rational pure = BruteForcePure(g).leader_value;
      EXPECT_GE(c.value.y, pure);
      strict += c.value.y > pure;
    }
    widest = std::max(widest, o.columns);
  }
  // The corpus must exercise mixing and non-trivial LPs.
  EXPECT_GT(strict, 3);
  EXPECT_GT(widest, 20u);
}

}  // namespace
}  // namespace stackel
