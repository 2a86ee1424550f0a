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

// Seeded end-to-end checks of every solver against the oracles.

#ifndef STACKEL_ACCEPTANCE_H_
#define STACKEL_ACCEPTANCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stackel/fptas.h"
#include "stackel/oracle.h"

namespace stackel {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::size_t instances = 0;
  std::string detail;  // first failure, or a short summary
};

// Runs the listed criteria (1..9; all when empty) in order. Criteria 6 and 8
// read what 5 and 1, 3, 4 recorded and run those first if needed.
std::vector<CriterionResult> RunAcceptance(const std::vector<int>& ids = {});

// One line per criterion: "[PASS] 3 sefce-tree vs oracle: ... (1.2 s / 60 s)".
std::string FormatResult(const CriterionResult& r);

// Subtree heights in edges, per node.
std::vector<int> EdgeHeights(const Game& game);

// Points of a grid frontier of s.binarized.game that beat the table at some
// node: follower utility above A_T[k] while the scaled leader utility is at
// least k + height(T). Returns a description of each, empty when none.
std::vector<std::string> InductionBViolations(const ApproxSolution& s,
                                              const GridFrontiers& grid);

// Induction (a): every finite entry's reconstructed sub-strategy offers the
// follower exactly A_T[k] and secures scaled leader utility >= k.
std::vector<std::string> InductionAViolations(const ApproxSolution& s,
                                              std::size_t max_entries = 64);

}  // namespace stackel

#endif  // STACKEL_ACCEPTANCE_H_
