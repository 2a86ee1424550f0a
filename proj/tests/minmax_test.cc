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

#include <gtest/gtest.h>

#include <random>

#include "stackel/instances.h"
#include "test_util.h"

namespace stackel {
namespace {

using testing::R;

TEST(MinmaxTest, Leaf) {
  GameBuilder b;
  NodeId z = b.Leaf(5, 1);
  MinmaxTable t = ComputeMinmax(b.Build(z));
  EXPECT_EQ(t.mu[z], Rational(1));
}

TEST(MinmaxTest, CapacityExample) {
  Game g = testing::CapacityExample();
  MinmaxTable t = ComputeMinmax(g);
  EXPECT_EQ(t.mu[3], Rational(3));  // follower node
  EXPECT_EQ(t.mu[g.root()], Rational(0));
  EXPECT_EQ(t.punish_leader.mix.at(g.root()),
            (std::vector<Rational>{1, 0}));
}

TEST(MinmaxTest, MatchingPenniesNode) {
  GameBuilder b;
  NodeId a = b.Leaf(0, 1);
  NodeId c = b.Leaf(0, -1);
  NodeId d = b.Leaf(0, -1);
  NodeId e = b.Leaf(0, 1);
  NodeId root = b.Concurrent({"u", "d"}, {"l", "r"}, {a, c, d, e});
  MinmaxTable t = ComputeMinmax(b.Build(root));
  EXPECT_EQ(t.mu[root], Rational(0));
  EXPECT_EQ(t.punish_leader.mix.at(root),
            (std::vector<Rational>{R("1/2"), R("1/2")}));
  EXPECT_EQ(t.punish_follower.mix.at(root),
            (std::vector<Rational>{R("1/2"), R("1/2")}));
}

TEST(MatrixGameTest, Trivial) {
  EXPECT_EQ(SolveMatrixGame({{0}}).value, Rational(0));
  EXPECT_EQ(SolveMatrixGame({{1, -1}, {-1, 1}}).value, Rational(0));
  EXPECT_THROW(SolveMatrixGame({}), std::invalid_argument);
}

TEST(MatrixGameTest, DualityCertificateOnRandomMatrices) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t rows = 1 + rng() % 3;
    std::size_t cols = 1 + rng() % 3;
    Matrix m(rows, std::vector<Rational>(cols));
    for (auto& r : m) {
      for (auto& x : r) x = Rational(static_cast<std::int64_t>(rng() % 11) - 5);
    }
    MatrixGameSolution s = SolveMatrixGame(m);
    for (std::size_t c = 0; c < cols; ++c) {
      Rational payoff;
      for (std::size_t r = 0; r < rows; ++r) payoff += s.row_mix[r] * m[r][c];
      EXPECT_LE(payoff, s.value);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      Rational payoff;
      for (std::size_t c = 0; c < cols; ++c) payoff += s.col_mix[c] * m[r][c];
      EXPECT_GE(payoff, s.value);
    }
  }
}

// The punishment profile realizes mu on every subgame, and no leader
// strategy holds the follower below mu.
TEST(MinmaxTest, PunishmentRealizesSecurityValue) {
  std::mt19937_64 rng(32);
  for (int iter = 0; iter < 150; ++iter) {
    GenParams p;
    p.seed = 1000 + iter;
    p.internal_nodes = 6;
    p.chance_fraction = iter % 2 ? Rational(1, 4) : Rational(0);
    if (iter % 3 == 0) {
      p.info = Information::kConcurrent;
      p.concurrent_fraction = Rational(1, 3);
    }
    p.graph = iter % 4 == 1 ? GraphKind::kDag : GraphKind::kTree;
    Game g = GenRandom(p);
    MinmaxTable t = ComputeMinmax(g);
    for (NodeId s : TopologicalOrder(g)) {
      ProfileValue v = EvaluateProfile(g, t.punish_leader, t.punish_follower, s);
      EXPECT_EQ(v.u2, t.mu[s]) << "node " << s;
    }
    // Random leader behavioral strategies.
    for (int k = 0; k < 5; ++k) {
      BehavioralStrategy lead{Player::kLeader, {}};
      for (const Node& n : g.nodes()) {
        std::size_t arity = n.NumActionsOf(Player::kLeader);
        if (arity == 0) continue;
        std::vector<Rational> w(arity);
        Rational total;
        for (auto& x : w) {
          x = Rational(static_cast<std::int64_t>(rng() % 4));
          total += x;
        }
        if (total.is_zero()) {
          w[0] = 1;
          total = 1;
        }
        for (auto& x : w) x /= total;
        lead.mix[n.id] = w;
      }
      ResponseValue r = LeaderFavoringResponse(g, lead);
      EXPECT_GE(r.u2, t.mu[g.root()]);
    }
  }
}

}  // namespace
}  // namespace stackel
