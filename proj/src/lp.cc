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

#include "stackel/lp.h"

#include <sstream>

namespace stackel {

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

int LinearProgram::AddVariable(std::string name, std::optional<Rational> lower,
                               std::optional<Rational> upper) {
  variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return static_cast<int>(variables_.size()) - 1;
}

void LinearProgram::SetObjective(Sense sense, std::vector<LinearTerm> terms) {
  sense_ = sense;
  objective_ = std::move(terms);
}

void LinearProgram::AddConstraint(std::string name,
                                  std::vector<LinearTerm> terms, Relation rel,
                                  Rational rhs) {
  constraints_.push_back({std::move(name), std::move(terms), rel,
                          std::move(rhs)});
}

void LinearProgram::Check() const {
  auto check_terms = [&](const std::vector<LinearTerm>& terms,
                         const std::string& where) {
    for (const LinearTerm& t : terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw LpError(where + " references undeclared variable " +
                      std::to_string(t.var));
      }
    }
  };
  check_terms(objective_, "objective");
  for (const Constraint& c : constraints_) check_terms(c.terms, c.name);
  for (const Variable& v : variables_) {
    if (v.lower && v.upper && *v.upper < *v.lower) {
      throw LpError("variable " + v.name + " has empty bounds");
    }
  }
}

namespace {

// Standard-form column for an original variable: x = offset + sign * col,
// or x = col_pos - col_neg when free.
struct ColumnMap {
  Rational offset;
  int sign = 1;
  int col = -1;
  int neg_col = -1;
};

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows, std::vector<Rational>(cols + 1)),
        obj_(cols + 1),
        basis_(rows, -1),
        allowed_(cols, true),
        cols_(cols) {}

  std::vector<Rational>& row(int r) { return rows_[r]; }
  std::vector<Rational>& obj() { return obj_; }
  std::vector<int>& basis() { return basis_; }
  std::vector<bool>& allowed() { return allowed_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  int pivots() const { return pivots_; }

  void Pivot(int r, int c) {
    ++pivots_;
    std::vector<Rational>& pr = rows_[r];
    Rational inv = Rational(1) / pr[c];
    std::vector<int> nz;
    for (int j = 0; j <= cols_; ++j) {
      if (pr[j].is_zero()) continue;
      pr[j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c].is_zero()) return;
      Rational f = row[c];
      for (int j : nz) row[j] -= f * pr[j];
    };
    for (int i = 0; i < num_rows(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(obj_);
    basis_[r] = c;
  }

  // Minimizes the objective row. Returns false when unbounded.
  bool Run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (allowed_[j] && obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < num_rows(); ++i) {
        const Rational& a = rows_[i][enter];
        if (a.sign() <= 0) continue;
        Rational ratio = rows_[i][cols_] / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
  }

  void DropRow(int r) {
    rows_.erase(rows_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<int> basis_;
  std::vector<bool> allowed_;
  int cols_;
  int pivots_ = 0;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp) {
  lp.Check();
  const int nv = lp.num_variables();
  // Column layout: structural columns, then slack/surplus, then artificial.
  std::vector<ColumnMap> map(nv);
  int ncols = 0;
  struct Row {
    std::vector<std::pair<int, Rational>> terms;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (int v = 0; v < nv; ++v) {
    const Variable& var = lp.variables()[v];
    if (var.lower) {
      map[v] = {*var.lower, 1, ncols++, -1};
      if (var.upper) {
        rows.push_back({{{map[v].col, Rational(1)}}, Relation::kLessEq,
                        *var.upper - *var.lower});
      }
    } else if (var.upper) {
      map[v] = {*var.upper, -1, ncols++, -1};
    } else {
      map[v].col = ncols++;
      map[v].neg_col = ncols++;
    }
  }
  const int nstruct = ncols;
  for (const Constraint& c : lp.constraints()) {
    Row row{{}, c.rel, c.rhs};
    std::vector<Rational> dense(nstruct);
    for (const LinearTerm& t : c.terms) {
      const ColumnMap& m = map[t.var];
      row.rhs -= t.coef * m.offset;
      dense[m.col] += m.sign * t.coef;
      if (m.neg_col >= 0) dense[m.neg_col] -= t.coef;
    }
    for (int j = 0; j < nstruct; ++j) {
      if (!dense[j].is_zero()) row.terms.push_back({j, dense[j]});
    }
    rows.push_back(std::move(row));
  }
  for (Row& row : rows) {
    if (row.rhs.sign() < 0) {
      row.rhs = -row.rhs;
      for (auto& [j, a] : row.terms) a = -a;
      if (row.rel == Relation::kLessEq) {
        row.rel = Relation::kGreaterEq;
      } else if (row.rel == Relation::kGreaterEq) {
        row.rel = Relation::kLessEq;
      }
    }
  }
  const int m = static_cast<int>(rows.size());
  std::vector<int> slack(m, -1), art(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rows[i].rel != Relation::kEqual) slack[i] = ncols++;
  }
  const int first_art = ncols;
  for (int i = 0; i < m; ++i) {
    if (rows[i].rel != Relation::kLessEq) art[i] = ncols++;
  }

  Tableau t(m, ncols);
  for (int i = 0; i < m; ++i) {
    std::vector<Rational>& r = t.row(i);
    for (const auto& [j, a] : rows[i].terms) r[j] = a;
    r[ncols] = rows[i].rhs;
    if (rows[i].rel == Relation::kLessEq) {
      r[slack[i]] = 1;
      t.basis()[i] = slack[i];
    } else {
      if (slack[i] >= 0) r[slack[i]] = -1;
      r[art[i]] = 1;
      t.basis()[i] = art[i];
    }
  }

  LpSolution out;
  // Phase 1: minimize the sum of artificials.
  if (first_art < ncols) {
    std::vector<Rational>& obj = t.obj();
    for (int i = 0; i < m; ++i) {
      if (art[i] < 0) continue;
      for (int j = 0; j <= ncols; ++j) {
        if (j >= first_art && j < ncols) continue;
        obj[j] -= t.row(i)[j];
      }
    }
    t.Run();
    if (!t.obj()[ncols].is_zero()) {
      out.status = LpStatus::kInfeasible;
      out.pivots = t.pivots();
      return out;
    }
    for (int j = first_art; j < ncols; ++j) t.allowed()[j] = false;
    // Drive remaining (zero-level) artificials out of the basis.
    for (int i = t.num_rows() - 1; i >= 0; --i) {
      if (t.basis()[i] < first_art) continue;
      int col = -1;
      for (int j = 0; j < first_art; ++j) {
        if (!t.row(i)[j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        t.Pivot(i, col);
      } else {
        t.DropRow(i);  // redundant constraint
      }
    }
  }

  // Phase 2.
  std::vector<Rational> cost(ncols + 1);
  int sense = lp.sense() == Sense::kMaximize ? -1 : 1;
  Rational constant;
  for (const LinearTerm& term : lp.objective()) {
    const ColumnMap& mp = map[term.var];
    Rational c = sense * term.coef;
    constant += c * mp.offset;
    cost[mp.col] += mp.sign * c;
    if (mp.neg_col >= 0) cost[mp.neg_col] -= c;
  }
  std::vector<Rational>& obj = t.obj();
  obj = cost;
  for (int i = 0; i < t.num_rows(); ++i) {
    int b = t.basis()[i];
    if (obj[b].is_zero()) continue;
    Rational f = obj[b];
    const std::vector<Rational>& r = t.row(i);
    for (int j = 0; j <= ncols; ++j) {
      if (!r[j].is_zero()) obj[j] -= f * r[j];
    }
  }
  if (!t.Run()) {
    out.status = LpStatus::kUnbounded;
    out.pivots = t.pivots();
    return out;
  }
  std::vector<Rational> x(ncols);
  for (int i = 0; i < t.num_rows(); ++i) x[t.basis()[i]] = t.row(i)[ncols];
  out.status = LpStatus::kOptimal;
  out.values.resize(nv);
  for (int v = 0; v < nv; ++v) {
    const ColumnMap& mp = map[v];
    if (mp.neg_col >= 0) {
      out.values[v] = x[mp.col] - x[mp.neg_col];
    } else {
      out.values[v] = mp.offset + mp.sign * x[mp.col];
    }
  }
  Rational z;
  for (const LinearTerm& term : lp.objective()) {
    z += term.coef * out.values[term.var];
  }
  out.objective = z;
  out.pivots = t.pivots();
  return out;
}

std::string CheckFeasible(const LinearProgram& lp,
                          const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) != lp.num_variables()) {
    return "wrong number of values";
  }
  for (int v = 0; v < lp.num_variables(); ++v) {
    const Variable& var = lp.variables()[v];
    if (var.lower && values[v] < *var.lower) return var.name + " below bound";
    if (var.upper && values[v] > *var.upper) return var.name + " above bound";
  }
  for (const Constraint& c : lp.constraints()) {
    Rational lhs;
    for (const LinearTerm& t : c.terms) lhs += t.coef * values[t.var];
    bool ok = c.rel == Relation::kLessEq    ? lhs <= c.rhs
              : c.rel == Relation::kEqual ? lhs == c.rhs
                                          : lhs >= c.rhs;
    if (!ok) {
      return "constraint " + c.name + " violated: lhs " + lhs.ToString() +
             ", rhs " + c.rhs.ToString();
    }
  }
  return "";
}

namespace {

std::string Decimal(const Rational& r) {
  if (r.is_integer()) return r.ToString();
  std::ostringstream os;
  os.precision(12);
  os << r.ToDouble();
  return os.str();
}

void WriteTerms(std::ostringstream& os, std::ostringstream& exact,
                const LinearProgram& lp,
                const std::vector<LinearTerm>& terms) {
  bool first = true;
  bool inexact = false;
  for (const LinearTerm& t : terms) {
    const std::string& name = lp.variables()[t.var].name;
    Rational mag = Abs(t.coef);
    os << (t.coef.sign() < 0 ? " - " : (first ? " " : " + "));
    if (mag != Rational(1)) os << Decimal(mag) << " ";
    os << name;
    if (!mag.is_integer()) inexact = true;
    exact << " " << (t.coef.sign() < 0 ? "-" : "+") << mag.ToString() << " "
          << name;
    first = false;
  }
  if (first) os << " 0";
  if (!inexact) exact.str("");
}

}  // namespace

std::string ToLpFormat(const LinearProgram& lp) {
  std::ostringstream out;
  out << (lp.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  {
    std::ostringstream line, exact;
    WriteTerms(line, exact, lp, lp.objective());
    out << " obj:" << line.str() << "\n";
    if (!exact.str().empty()) out << "\\ exact:" << exact.str() << "\n";
  }
  out << "Subject To\n";
  for (const Constraint& c : lp.constraints()) {
    std::ostringstream line, exact;
    WriteTerms(line, exact, lp, c.terms);
    const char* rel = c.rel == Relation::kLessEq    ? "<="
                      : c.rel == Relation::kEqual ? "="
                                                  : ">=";
    out << " " << c.name << ":" << line.str() << " " << rel << " "
        << Decimal(c.rhs) << "\n";
    if (!exact.str().empty() || !c.rhs.is_integer()) {
      out << "\\ exact:" << exact.str() << " " << rel << " "
          << c.rhs.ToString() << "\n";
    }
  }
  out << "Bounds\n";
  for (const Variable& v : lp.variables()) {
    if (v.lower && v.upper) {
      out << " " << Decimal(*v.lower) << " <= " << v.name
          << " <= " << Decimal(*v.upper) << "\n";
    } else if (v.lower) {
      if (!v.lower->is_zero()) {
        out << " " << v.name << " >= " << Decimal(*v.lower) << "\n";
      }
    } else if (v.upper) {
      out << " -inf <= " << v.name << " <= " << Decimal(*v.upper) << "\n";
    } else {
      out << " " << v.name << " free\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace stackel
