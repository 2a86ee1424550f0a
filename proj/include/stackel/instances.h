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

// Instance generators: seeded random games, the knapsack reduction game and
// the small worked example with SEFCE value 3/2.

#ifndef STACKEL_INSTANCES_H_
#define STACKEL_INSTANCES_H_

#include <cstdint>
#include <random>
#include <vector>

#include "stackel/game.h"

namespace stackel {

// Uniform integer in [0, n) by rejection sampling; unlike the standard
// distributions its output is fixed across standard library versions.
std::uint64_t UniformIndex(std::mt19937_64& rng, std::uint64_t n);
std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
// True with probability p (p in [0, 1]).
bool Bernoulli(std::mt19937_64& rng, const Rational& p);

struct GenParams {
  std::uint64_t seed = 1;
  // Number of non-leaf nodes before DAG merging.
  int internal_nodes = 8;
  int max_branching = 3;  // turn-based and chance arity drawn from 2..this
  Rational chance_fraction = 0;
  Rational concurrent_fraction = 0;
  Rational follower_fraction = Rational(1, 2);
  std::int64_t utility_lo = 0;
  std::int64_t utility_hi = 5;
  GraphKind graph = GraphKind::kTree;
  // kTurnBased forbids concurrent nodes; kConcurrent forces at least one.
  Information info = Information::kTurnBased;
  // DAG mode: chance that an edge is redirected to a node one level deeper.
  Rational merge_fraction = Rational(1, 3);
};

// Throws std::invalid_argument on contradictory parameters.
Game GenRandom(const GenParams& params);

// Complete tree where every internal node has `branching` children, kinds
// alternating leader/follower by level, leaf utilities from the seed.
Game GenBalancedTree(int branching, int depth, std::uint64_t seed,
                     std::int64_t utility_hi = 1000);

struct KnapsackInstance {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> values;
  std::int64_t budget = 0;
  std::int64_t target = 0;
};

bool IsUnitItems(const KnapsackInstance& k);

// Appends `budget` unit items and scales the original values by budget+1.
KnapsackInstance KnapsackToUnitItems(const KnapsackInstance& k);

// Best total value of a subset within budget, by subset enumeration.
std::int64_t KnapsackOptimum(const KnapsackInstance& k);

// Random instance with n items of which the first `budget` are unit items.
KnapsackInstance RandomUnitItems(std::uint64_t seed, int n);

// Concurrent-move reduction game; requires a unit-items instance.
Game GenKnapsackReduction(const KnapsackInstance& unit);

// The constant M of the reduction: the least integer exceeding both
// budget*N*v_i and N*w_i for every item.
std::int64_t ReductionConstant(const KnapsackInstance& unit);

// Reconstruction of the small worked example: follower root s1 (left s2,
// right leaf (0,2)); follower s2 over leader nodes s3 {(4,0), (0,2)} and
// s4 {(0,1), (1,3)}. Leaves are (u1, u2). SEFCE value 3/2, behavioral
// commitment value 1.
Game ExampleFig1();

}  // namespace stackel

#endif  // STACKEL_INSTANCES_H_
