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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "stackel/acceptance.h"
#include "stackel/instances.h"
#include "stackel/oracle.h"
#include "test_util.h"

namespace stackel {
namespace {

using testing::R;

// Non-increasing with a finite prefix of random length.
TradeoffTable RandomTable(std::mt19937_64& rng, int n) {
  TradeoffTable t(n, ExtRational::NegInf());
  int m = static_cast<int>(UniformIndex(rng, n + 1));
  std::int64_t v = UniformInt(rng, 0, 12);
  for (int k = m - 1; k >= 0; --k) {
    v += UniformInt(rng, 0, 2);
    t[k] = Rational(v);
  }
  return t;
}

bool NonIncreasing(const TradeoffTable& t) {
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] > t[k - 1]) return false;
  }
  return true;
}

Rational Replay(const Game& g, const BehavioralStrategy& s) {
  return LeaderFavoringResponse(g, s).u1;
}

TEST(BinarizeTest, ChainsAndConditionals) {
  GameBuilder b;
  NodeId x = b.Leaf(1, 0), y = b.Leaf(2, 0), z = b.Leaf(3, 0);
  NodeId c = b.Chance({{R("1/2"), x}, {R("1/3"), y}, {R("1/6"), z}});
  NodeId p = b.Leaf(0, 0), q = b.Leaf(0, 1), r = b.Leaf(0, 2);
  NodeId l = b.Leader({c, p, q, r});
  Game g = b.Build(l);
  BinarizedGame bg = Binarize(g);
  EXPECT_TRUE(Validate(bg.game).ok());
  ASSERT_EQ(bg.chain.at(l).size(), 3u);
  ASSERT_EQ(bg.chain.at(c).size(), 2u);
  const Node& c0 = bg.game.node(bg.chain.at(c)[0]);
  const Node& c1 = bg.game.node(bg.chain.at(c)[1]);
  EXPECT_EQ(c0.branches[0].probability, R("1/2"));
  EXPECT_EQ(c1.branches[0].probability, R("2/3"));
  EXPECT_EQ(c1.branches[1].probability, R("1/3"));
  EXPECT_EQ(TreeLevels(g), 3);
  EXPECT_EQ(TreeLevels(bg.game), 4);

  BehavioralStrategy s{Player::kLeader, {}};
  const auto& ch = bg.chain.at(l);
  s.mix[ch[0]] = {R("1/2"), R("1/2")};
  s.mix[ch[1]] = {R("1/3"), R("2/3")};
  s.mix[ch[2]] = {R("1/4"), R("3/4")};
  BehavioralStrategy o = ToOriginal(bg, s);
  EXPECT_EQ(o.mix.at(l), (std::vector<Rational>{R("1/2"), R("1/6"), R("1/12"),
                                                 R("1/4")}));
}

// Follower-only trees: leaves reached by some follower best response.
Rational FollowerValue(const Game& g, NodeId node) {
  const Node& n = g.node(node);
  if (n.is_leaf()) return n.u2;
  Rational best = FollowerValue(g, n.Children()[0]);
  for (NodeId c : n.Children()) best = std::max(best, FollowerValue(g, c));
  return best;
}

std::set<NodeId> FollowerOutcomes(const Game& g, NodeId node) {
  const Node& n = g.node(node);
  if (n.is_leaf()) return {node};
  std::set<NodeId> out;
  const Rational best = FollowerValue(g, node);
  for (NodeId c : n.Children()) {
    if (FollowerValue(g, c) == best) {
      std::set<NodeId> sub = FollowerOutcomes(g, c);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

TEST(BinarizeTest, FourWayFollower) {
  GameBuilder b;
  NodeId a = b.Leaf(1, 3), c = b.Leaf(2, 1), d = b.Leaf(3, 3), e = b.Leaf(4, 2);
  Game g = b.Build(b.Follower({a, c, d, e}));
  BinarizedGame bg = Binarize(g);
  ASSERT_EQ(bg.chain.at(g.root()).size(), 3u);
  std::set<NodeId> after;
  for (NodeId z : FollowerOutcomes(bg.game, bg.game.root())) {
    after.insert(bg.origin[z]);
  }
  EXPECT_EQ(after, FollowerOutcomes(g, g.root()));
  EXPECT_EQ(after, (std::set<NodeId>{a, d}));
}

TEST(BinarizeTest, BinaryTreeUnchanged) {
  Game g = testing::CapacityExample();
  BinarizedGame bg = Binarize(g);
  ASSERT_EQ(bg.game.num_nodes(), g.num_nodes());
  for (NodeId id = 0; id < bg.game.num_nodes(); ++id) {
    const Node& n = bg.game.node(id);
    const Node& o = g.node(bg.origin[id]);
    EXPECT_EQ(n.kind, o.kind);
    EXPECT_EQ(n.u1, o.u1);
    EXPECT_EQ(n.u2, o.u2);
  }
}

TEST(CombineTest, MatchesReferences) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 400; ++iter) {
    int n = 1 + static_cast<int>(UniformIndex(rng, 12));
    TradeoffTable l = RandomTable(rng, n), r = RandomTable(rng, n);
    std::vector<Witness> w;
    TradeoffTable fast = CombineLeaderMixed(l, r, &w);
    ASSERT_EQ(fast, CombineLeaderMixedReference(l, r)) << "iter " << iter;
    EXPECT_TRUE(NonIncreasing(fast));
    for (int k = 0; k < n; ++k) {
      if (!fast[k].is_finite()) continue;
      const Witness& x = w[k];
      Rational val = 0, idx = 0;
      if (x.p.sign() > 0) {
        val += x.p * l[x.i].value();
        idx += x.p * x.i;
      }
      if (x.p < Rational(1)) {
        val += (Rational(1) - x.p) * r[x.j].value();
        idx += (Rational(1) - x.p) * x.j;
      }
      EXPECT_EQ(ExtRational(val), fast[k]);
      EXPECT_GE(idx, Rational(k));
    }
    Rational wt(1 + static_cast<std::int64_t>(UniformIndex(rng, 4)), 5);
    TradeoffTable ch = CombineChance(l, r, wt, &w);
    ASSERT_EQ(ch, CombineChanceReference(l, r, wt)) << "iter " << iter;
    for (int k = 0; k < n; ++k) {
      if (!ch[k].is_finite()) continue;
      EXPECT_GE(wt * w[k].i + (Rational(1) - wt) * w[k].j, Rational(k));
      EXPECT_EQ(ExtRational(wt * l[w[k].i].value() +
                            (Rational(1) - wt) * r[w[k].j].value()),
                ch[k]);
    }
    EXPECT_TRUE(NonIncreasing(CombineLeaderPure(l, r, nullptr)));
  }
}

TEST(FptasTest, SingleLeaf) {
  GameBuilder b;
  Game g = b.Build(b.Leaf(4, 7));
  ApproxSolution s = FptasBehavioral(g, R("1/10"));
  EXPECT_EQ(s.guaranteed_value, Rational(4));
  EXPECT_EQ(s.params.n, 1);
}

TEST(FptasTest, ChanceAverage) {
  GameBuilder b;
  NodeId x = b.Leaf(2, 0), y = b.Leaf(4, 0);
  Game g = b.Build(b.Chance({{R("1/2"), x}, {R("1/2"), y}}));
  ApproxSolution s = FptasBehavioral(g, R("1/10"));
  EXPECT_GE(s.guaranteed_value, R("29/10"));
  EXPECT_LE(s.guaranteed_value, Rational(3));
}

TEST(FptasTest, CapacityExample) {
  Game g = testing::CapacityExample();
  ApproxSolution p = FptasPure(g, R("1/10"));
  EXPECT_GE(p.guaranteed_value, R("19/10"));
  EXPECT_LE(p.guaranteed_value, Rational(2));
  EXPECT_GE(Replay(g, p.strategy), p.guaranteed_value);
  // The follower node ends at (0,3) whatever the leader does.
  ApproxSolution m = FptasBehavioral(g, R("1/100"));
  EXPECT_EQ(m.guaranteed_value, Rational(2));
  EXPECT_EQ(m.strategy.mix.at(g.root()), (std::vector<Rational>{1, 0}));
}

TEST(FptasTest, FollowerRoot) {
  Game g = testing::FollowerRootExample();
  ApproxSolution s = FptasBehavioral(g, R("1/20"));
  EXPECT_GE(s.guaranteed_value, R("39/20"));
  EXPECT_LE(s.guaranteed_value, Rational(2));
  EXPECT_GE(Replay(g, s.strategy), s.guaranteed_value);
}

// Follower root: left is chance over (4,0) and a leader node over (6,0),
// (0,4); right is (1,1). Mixing 1/2 on (6,0) keeps the left branch at
// follower utility 1, worth 2 + 3/2 to the leader.
TEST(FptasTest, FollowerOverChance) {
  GameBuilder b;
  NodeId x = b.Leaf(4, 0), y = b.Leaf(6, 0), z = b.Leaf(0, 4);
  NodeId lead = b.Leader({y, z});
  NodeId ch = b.Chance({{R("1/2"), x}, {R("1/2"), lead}});
  Game g = b.Build(b.Follower({ch, b.Leaf(1, 1)}));
  ApproxSolution coarse = FptasBehavioral(g, R("1/50"));
  ApproxSolution fine = FptasBehavioral(g, R("1/5000"));
  EXPECT_LE(fine.guaranteed_value, R("7/2"));
  EXPECT_GT(fine.guaranteed_value, R("7/2") - R("1/5000"));
  EXPECT_LE(coarse.guaranteed_value, R("7/2"));
  EXPECT_GT(coarse.guaranteed_value, R("7/2") - R("1/50"));
  EXPECT_GE(Replay(g, coarse.strategy), coarse.guaranteed_value);
  EXPECT_EQ(FptasPure(g, R("1/50")).guaranteed_value, Rational(2));
}

TEST(FptasTest, InductionHypotheses) {
  OracleBudget big;
  big.max_decision_nodes = 64;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenParams p;
    p.seed = 3000 + seed;
    p.internal_nodes = 2 + static_cast<int>(seed % 6);
    p.chance_fraction = R("1/3");
    Game g = GenRandom(p);
    for (const Rational& e : {R("1/2"), R("1/10")}) {
      ApproxSolution a = FptasBehavioral(g, e);
      std::vector<std::string> bad = InductionAViolations(a, 16);
      EXPECT_TRUE(bad.empty()) << "seed " << p.seed << ": " << bad.front();
      GridFrontiers grid = GridBehavioralFrontiers(a.binarized.game, 16, big);
      bad = InductionBViolations(a, grid);
      EXPECT_TRUE(bad.empty()) << "seed " << p.seed << ": " << bad.front();
      EXPECT_LT(grid.value, a.guaranteed_value + e);

      ApproxSolution q = FptasPure(g, e);
      bad = InductionAViolations(q, 16);
      EXPECT_TRUE(bad.empty()) << "seed " << p.seed << ": " << bad.front();
      bad = InductionBViolations(q, GridBehavioralFrontiers(q.binarized.game, 1, big));
      EXPECT_TRUE(bad.empty()) << "seed " << p.seed << ": " << bad.front();
    }
  }
}

TEST(FptasTest, EpsilonConsistency) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenParams p;
    p.seed = 4000 + seed;
    p.chance_fraction = R("1/4");
    Game g = GenRandom(p);
    Rational coarse = FptasBehavioral(g, R("1/4")).guaranteed_value;
    Rational fine = FptasBehavioral(g, R("1/40")).guaranteed_value;
    EXPECT_GE(fine, coarse - R("1/4")) << "seed " << p.seed;
  }
}

TEST(FptasTest, RejectsBadInput) {
  EXPECT_THROW(FptasPure(testing::CapacityExample(), Rational(0)),
               std::invalid_argument);
  EXPECT_THROW(FptasPure(GenKnapsackReduction({{1, 1}, {1, 1}, 1, 1}), R("1/2")),
               GameError);
}

TEST(FptasTest, RandomTreesAgainstBruteForce) {
  const Rational eps[] = {R("1/2"), R("1/10"), R("1/50")};
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenParams p;
    p.seed = seed;
    p.internal_nodes = 2 + static_cast<int>(seed % 7);
    p.chance_fraction = seed % 2 ? R("1/3") : Rational(0);
    Game g = GenRandom(p);
    Rational pure = BruteForcePure(g).leader_value;
    for (const Rational& e : eps) {
      ApproxSolution a = FptasPure(g, e);
      EXPECT_LE(a.guaranteed_value, pure) << "seed " << seed;
      EXPECT_GT(a.guaranteed_value, pure - e) << "seed " << seed;
      EXPECT_GE(Replay(g, a.strategy), a.guaranteed_value) << "seed " << seed;
      ApproxSolution m = FptasBehavioral(g, e);
      EXPECT_GT(m.guaranteed_value, pure - e) << "seed " << seed;
      EXPECT_GE(Replay(g, m.strategy), m.guaranteed_value) << "seed " << seed;
      for (const TradeoffTable& t : m.tables) EXPECT_TRUE(NonIncreasing(t));
    }
  }
}

}  // namespace
}  // namespace stackel
