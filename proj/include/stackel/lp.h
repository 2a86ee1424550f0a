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

// Exact rational linear programming: two-phase primal simplex on a dense
// tableau with Bland's rule.

#ifndef STACKEL_LP_H_
#define STACKEL_LP_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackel/rational.h"

namespace stackel {

enum class Relation { kLessEq, kEqual, kGreaterEq };
enum class Sense { kMaximize, kMinimize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

struct LinearTerm {
  int var;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation rel = Relation::kLessEq;
  Rational rhs;
};

struct Variable {
  std::string name;
  std::optional<Rational> lower = Rational(0);  // nullopt: unbounded below
  std::optional<Rational> upper;                // nullopt: unbounded above
};

class LpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LinearProgram {
 public:
  int AddVariable(std::string name, std::optional<Rational> lower = Rational(0),
                  std::optional<Rational> upper = std::nullopt);
  void SetObjective(Sense sense, std::vector<LinearTerm> terms);
  void AddConstraint(std::string name, std::vector<LinearTerm> terms,
                     Relation rel, Rational rhs);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Sense sense() const { return sense_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }

  // Throws LpError on references to undeclared variables or empty bounds.
  void Check() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::kMaximize;
  std::vector<LinearTerm> objective_;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> values;  // by variable index, when optimal
  Rational objective;
  int pivots = 0;
};

LpSolution SolveLp(const LinearProgram& lp);

// Empty string when `values` satisfies every bound and constraint exactly,
// else a description of the first violation.
std::string CheckFeasible(const LinearProgram& lp,
                          const std::vector<Rational>& values);

// CPLEX-LP-style text. Integral coefficients are printed as integers, others
// as 12-digit decimals followed by a "\ p/q" comment line with exact values.
std::string ToLpFormat(const LinearProgram& lp);

}  // namespace stackel

#endif  // STACKEL_LP_H_
