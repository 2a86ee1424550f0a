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

#include "stackel/game.h"

#include <gtest/gtest.h>

#include "stackel/game_io.h"
#include "test_util.h"

namespace stackel {
namespace {

using testing::R;

TEST(ValidateTest, MinimalGameIsClean) {
  Game g = testing::TwoLeafGame(3, 0, 1, 5);
  EXPECT_TRUE(Validate(g).ok());
}

TEST(ValidateTest, ChanceSum) {
  GameBuilder b;
  NodeId x = b.Leaf(0, 0);
  NodeId y = b.Leaf(1, 1);
  NodeId root = b.Chance({{R("1/2"), x}, {R("1/3"), y}});
  ValidationReport rep = Validate(b.Build(root));
  EXPECT_TRUE(rep.Has(ViolationKind::kChanceSum));
  EXPECT_EQ(rep.violations.size(), 1u);
}

TEST(ValidateTest, Cycle) {
  std::vector<Node> nodes(3);
  nodes[0] = {.id = 0, .kind = NodeKind::kLeader, .actions = {{"a", 1}}};
  nodes[1] = {.id = 1, .kind = NodeKind::kFollower,
              .actions = {{"b", 0}, {"c", 2}}};
  nodes[2] = {.id = 2};
  ValidationReport rep = Validate(Game(GraphKind::kDag, 0, nodes));
  EXPECT_TRUE(rep.Has(ViolationKind::kCycle));
}

TEST(ValidateTest, OrphanAndMultiParent) {
  GameBuilder b;
  NodeId z = b.Leaf(0, 0);
  b.Leaf(1, 1);  // orphan
  NodeId root = b.Leader({z, z});
  ValidationReport tree = Validate(b.Build(root));
  EXPECT_TRUE(tree.Has(ViolationKind::kOrphan));
  EXPECT_TRUE(tree.Has(ViolationKind::kMultiParent));
  ValidationReport dag = Validate(b.Build(root, GraphKind::kDag));
  EXPECT_FALSE(dag.Has(ViolationKind::kMultiParent));
}

TEST(ValidateTest, ShapeErrors) {
  GameBuilder b;
  NodeId z = b.Leaf(0, 0);
  NodeId root = b.Concurrent({"u", "u"}, {"l"}, {z});
  ValidationReport rep = Validate(b.Build(root));
  EXPECT_TRUE(rep.Has(ViolationKind::kBadConcurrentShape));
  EXPECT_TRUE(rep.Has(ViolationKind::kDuplicateLabel));
}

TEST(ClassifyTest, Shapes) {
  EXPECT_EQ(Classify(testing::TwoLeafGame(3, 0, 1, 5)),
            (GameClass{GraphKind::kTree, Information::kTurnBased, false}));

  GameBuilder c;
  NodeId a = c.Leaf(0, 0);
  NodeId d = c.Leaf(1, 1);
  NodeId root = c.Concurrent({"u"}, {"l", "r"}, {a, d});
  EXPECT_EQ(Classify(c.Build(root)).info, Information::kConcurrent);

  GameBuilder g;
  NodeId shared = g.Leaf(1, 1);
  NodeId other = g.Leaf(0, 0);
  NodeId l1 = g.Leader({shared, other});
  NodeId l2 = g.Leader({shared});
  NodeId top = g.Follower({l1, l2});
  EXPECT_EQ(Classify(g.Build(top, GraphKind::kDag)).graph, GraphKind::kDag);

  GameBuilder bad;
  NodeId x = bad.Leaf(0, 0);
  NodeId y = bad.Leaf(0, 0);
  NodeId croot = bad.Chance({{R("1/2"), x}, {R("1/3"), y}});
  EXPECT_THROW(Classify(bad.Build(croot)), GameError);
}

TEST(EvaluateTest, PureLeaderChoice) {
  Game g = testing::TwoLeafGame(3, 0, 1, 5);
  PureStrategy s1{Player::kLeader, {{g.root(), 0}}};
  ProfileValue v = EvaluateProfile(g, ToBehavioral(g, s1),
                                   BehavioralStrategy{Player::kFollower, {}});
  EXPECT_EQ(v.u1, Rational(3));
  EXPECT_EQ(v.u2, Rational(0));
  EXPECT_EQ(v.leaf_probs.size(), 1u);
}

TEST(EvaluateTest, ChanceExpectation) {
  GameBuilder b;
  NodeId x = b.Leaf(2, 0);
  NodeId y = b.Leaf(4, 0);
  NodeId root = b.Chance({{R("1/2"), x}, {R("1/2"), y}});
  Game g = b.Build(root);
  ProfileValue v = EvaluateProfile(g, {Player::kLeader, {}},
                                   {Player::kFollower, {}});
  EXPECT_EQ(v.u1, Rational(3));
  EXPECT_EQ(v.leaf_probs.at(x), R("1/2"));
}

TEST(EvaluateTest, MissingEntryNamesNode) {
  Game g = testing::CapacityExample();
  BehavioralStrategy s1{Player::kLeader, {{g.root(), {0, 1}}}};
  try {
    EvaluateProfile(g, s1, {Player::kFollower, {}});
    FAIL() << "expected GameError";
  } catch (const GameError& e) {
    EXPECT_NE(std::string(e.what()).find("node 3"), std::string::npos);
  }
}

TEST(EvaluateTest, ConcurrentMixedProfile) {
  GameBuilder b;
  NodeId a = b.Leaf(1, 0);
  NodeId c = b.Leaf(0, 1);
  NodeId d = b.Leaf(0, 1);
  NodeId e = b.Leaf(1, 0);
  NodeId root = b.Concurrent({"u", "d"}, {"l", "r"}, {a, c, d, e});
  Game g = b.Build(root);
  BehavioralStrategy s1{Player::kLeader, {{root, {R("1/3"), R("2/3")}}}};
  BehavioralStrategy s2{Player::kFollower, {{root, {R("1/4"), R("3/4")}}}};
  ProfileValue v = EvaluateProfile(g, s1, s2);
  // u1 = 1/3*1/4 + 2/3*3/4.
  EXPECT_EQ(v.u1, R("7/12"));
  Rational total;
  for (const auto& [id, p] : v.leaf_probs) total += p;
  EXPECT_EQ(total, Rational(1));
}

TEST(ResponseTest, LeaderFavoringTies) {
  GameBuilder b;
  NodeId x = b.Leaf(0, 2);
  NodeId y = b.Leaf(5, 2);
  NodeId root = b.Follower({x, y});
  Game g = b.Build(root);
  ResponseValue r = LeaderFavoringResponse(g, {Player::kLeader, {}});
  EXPECT_EQ(r.u1, Rational(5));
  EXPECT_EQ(r.follower.choice.at(root), 1);
}

TEST(GameIoTest, RoundTripIsByteIdentical) {
  GameBuilder b;
  NodeId x = b.Leaf(R("1/3"), -2);
  NodeId y = b.Leaf(R("-7/4"), R("123456789012345678901234567890"));
  NodeId f = b.Follower({{"left", x}, {"right", y}});
  NodeId z = b.Leaf(0, 0);
  NodeId ch = b.Chance({{R("1/3"), f}, {R("2/3"), z}});
  NodeId w = b.Leaf(1, 1);
  NodeId q = b.Leaf(2, 2);
  NodeId conc = b.Concurrent({"u"}, {"l", "r"}, {w, q});
  NodeId root = b.Leader({{"go", ch}, {"stop", conc}});
  Game g = b.Build(root);
  std::string text = SerializeGame(g);
  Game back = ParseGame(text);
  EXPECT_EQ(back, g);
  EXPECT_EQ(SerializeGame(back), text);
}

TEST(GameIoTest, ParsesIntegersAndStrings) {
  Game g = ParseGame(R"({"graph":"tree","root":0,"nodes":[
      {"id":1,"kind":"leaf","u":[3,"1/3"]},
      {"id":0,"kind":"chance","branches":[["1",1]]}]})");
  EXPECT_EQ(g.node(1).u1, Rational(3));
  EXPECT_EQ(g.node(1).u2, Rational(1, 3));
  EXPECT_TRUE(Validate(g).ok());
}

TEST(GameIoTest, UnknownKindIsParseError) {
  try {
    ParseGame(R"({"graph":"tree","root":0,"nodes":[{"id":0,"kind":"oracle"}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "/nodes/0/kind");
  }
}

TEST(GameIoTest, SyntaxErrorHasBytePosition) {
  try {
    ParseGame(R"({"graph": "tree", "root": 0,, })");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where().rfind("byte ", 0), 0u);
  }
}

TEST(GameIoTest, RejectsFloatsAndSparseIds) {
  EXPECT_THROW(ParseGame(R"({"graph":"tree","root":0,"nodes":[
      {"id":0,"kind":"leaf","u":[0.5,1]}]})"),
               ParseError);
  EXPECT_THROW(ParseGame(R"({"graph":"tree","root":0,"nodes":[
      {"id":2,"kind":"leaf","u":[0,1]}]})"),
               ParseError);
}

}  // namespace
}  // namespace stackel
