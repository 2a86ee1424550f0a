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

#include "stackel/acceptance.h"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "stackel/instances.h"
#include "stackel/minmax.h"
#include "stackel/pure_dag.h"
#include "stackel/sefce_lp.h"
#include "stackel/sefce_tree.h"

namespace stackel {
namespace {

using Clock = std::chrono::steady_clock;

// Shared state: later criteria read counts recorded by earlier ones.
struct Suite {
  std::set<int> done;
  std::size_t sefce_outputs = 0;
  std::vector<std::string> deviation_failures;
  std::size_t fptas_tables = 0;
  std::size_t fptas_strategies = 0;
  std::vector<std::string> soundness_failures;
};

class Checker {
 public:
  explicit Checker(CriterionResult* r) : r_(r) {}
  // Records the first failure; returns ok so callers can bail early.
  bool Expect(bool ok, const std::function<std::string()>& what) {
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what();
    }
    return ok;
  }
  bool clean() const { return failures_ == 0; }
  void Finish(const std::string& summary) {
    r_->passed = clean() && r_->seconds < r_->limit_seconds;
    if (!clean()) {
      r_->detail = std::to_string(failures_) + " failure(s); first: " + first_;
    } else if (r_->seconds >= r_->limit_seconds) {
      r_->detail = "over time limit; " + summary;
    } else {
      r_->detail = summary;
    }
  }

 private:
  CriterionResult* r_;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string Str(const Rational& r) { return r.ToString(); }

void RecordDeviation(Suite& suite, const Game& g, const CompactSefce& c,
                     const std::string& where) {
  ++suite.sefce_outputs;
  DeviationReport rep = VerifyNoDeviation(g, c);
  if (!rep.ok()) {
    std::string msg = where + ": ";
    if (!rep.violations.empty()) {
      const DeviationViolation& v = rep.violations.front();
      msg += "node " + std::to_string(v.node) + " gain " + Str(v.gain);
    } else {
      msg += rep.errors.front();
    }
    suite.deviation_failures.push_back(msg);
  }
}

void Criterion1(Suite& suite, CriterionResult& r, Checker& c) {
  Game g = ExampleFig1();
  const Rational want(3, 2);
  CompactSefce tree = SolveSefceTree(g);
  c.Expect(tree.value.y == want, [&] { return "sefce-tree " + Str(tree.value.y); });
  RecordDeviation(suite, g, tree, "fig1 sefce-tree");
  FlowSolution lp = SolveSefceConcurrent(g);
  c.Expect(lp.leader_value == want, [&] { return "sefce-lp " + Str(lp.leader_value); });
  RecordDeviation(suite, g, lp.compact, "fig1 sefce-lp");
  Rational oracle = BruteForceSefce(g).value;
  c.Expect(oracle == want, [&] { return "sefce oracle " + Str(oracle); });
  Rational grid = GridBehavioral(g, 4);
  c.Expect(grid == Rational(1), [&] { return "grid g=4 " + Str(grid); });
  r.instances = 1;
  r.detail = "tree = lp = oracle = 3/2, grid(4) = 1";
}

void Criterion2(Suite&, CriterionResult& r, Checker& c) {
  std::size_t dags = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    GenParams p;
    p.seed = 200000 + i;
    p.internal_nodes = 1 + static_cast<int>(i % 10);
    p.graph = GraphKind::kDag;
    p.merge_fraction = Rational(1, 2);
    Game g = GenRandom(p);
    dags += Classify(g).graph == GraphKind::kDag;
    PureCommitmentSolution s = SolvePureDag(g);
    PureCommitmentSolution o = BruteForcePure(g);
    c.Expect(s.leader_value == o.leader_value, [&] {
      return "seed " + std::to_string(p.seed) + ": pure-dag " + Str(s.leader_value) +
             " oracle " + Str(o.leader_value);
    });
    std::vector<NodeId> poss = PossibleOutcomes(g, ComputeCapacities(g, ComputeMinmax(g)));
    c.Expect(std::set<NodeId>(poss.begin(), poss.end()) == PureReachableLeaves(g),
             [&] { return "seed " + std::to_string(p.seed) + ": reachability sets differ"; });
  }
  r.instances = 500;
  r.detail = std::to_string(dags) + " of 500 instances have shared nodes";
}

void Criterion3(Suite& suite, CriterionResult& r, Checker& c) {
  std::size_t strict = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    GenParams p;
    p.seed = 300000 + i;
    p.internal_nodes = 2 + static_cast<int>(i % 7);
    p.chance_fraction = i % 2 ? Rational(1, 4) : Rational(0);
    p.utility_hi = 20;
    Game g = GenRandom(p);
    CompactSefce s = SolveSefceTree(g);
    Rational o = BruteForceSefce(g).value;
    c.Expect(s.value.y == o, [&] {
      return "seed " + std::to_string(p.seed) + ": sefce-tree " + Str(s.value.y) +
             " oracle " + Str(o);
    });
    RecordDeviation(suite, g, s, "seed " + std::to_string(p.seed));
    if (i % 2 == 0 && o > BruteForcePure(g).leader_value) ++strict;
  }
  r.instances = 200;
  r.detail = std::to_string(strict) + " no-chance instances where correlation beats pure";
}

void Criterion4(Suite& suite, CriterionResult& r, Checker& c) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    GenParams p;
    p.seed = 400000 + i;
    p.internal_nodes = 2 + static_cast<int>(i % 6);
    p.info = Information::kConcurrent;
    p.concurrent_fraction = Rational(1, 2);
    p.chance_fraction = i % 3 == 0 ? Rational(1, 5) : Rational(0);
    p.utility_hi = 9;
    Game g = GenRandom(p);
    FlowSolution f = SolveSefceConcurrent(g);
    Rational o = BruteForceSefce(g).value;
    c.Expect(f.leader_value == o, [&] {
      return "concurrent seed " + std::to_string(p.seed) + ": sefce-lp " +
             Str(f.leader_value) + " oracle " + Str(o);
    });
    RecordDeviation(suite, g, f.compact, "concurrent seed " + std::to_string(p.seed));
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    GenParams p;
    p.seed = 410000 + i;
    p.internal_nodes = 2 + static_cast<int>(i % 10);
    p.chance_fraction = i % 2 ? Rational(1, 4) : Rational(0);
    p.utility_hi = 12;
    Game g = GenRandom(p);
    FlowSolution f = SolveSefceConcurrent(g);
    CompactSefce s = SolveSefceTree(g);
    c.Expect(f.leader_value == s.value.y, [&] {
      return "turn-based seed " + std::to_string(p.seed) + ": sefce-lp " +
             Str(f.leader_value) + " sefce-tree " + Str(s.value.y);
    });
    RecordDeviation(suite, g, f.compact, "lp seed " + std::to_string(p.seed));
    RecordDeviation(suite, g, s, "tree seed " + std::to_string(p.seed));
  }
  r.instances = 300;
  r.detail = "100 concurrent vs oracle, 200 turn-based lp vs tree";
}

bool NonIncreasing(const TradeoffTable& t) {
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] > t[k - 1]) return false;
  }
  return true;
}

void Soundness(Suite& suite, const Game& g, const ApproxSolution& a,
               const std::string& where) {
  for (std::size_t id = 0; id < a.tables.size(); ++id) {
    ++suite.fptas_tables;
    if (!NonIncreasing(a.tables[id])) {
      suite.soundness_failures.push_back(where + ": table at node " +
                                         std::to_string(id) + " increases");
    }
  }
  ++suite.fptas_strategies;
  Rational v = LeaderFavoringResponse(g, a.strategy).u1;
  if (v < a.guaranteed_value) {
    suite.soundness_failures.push_back(where + ": replay " + Str(v) +
                                       " below guarantee " +
                                       Str(a.guaranteed_value));
  }
}

void Criterion5(Suite& suite, CriterionResult& r, Checker& c) {
  const Rational eps[] = {Rational(1, 2), Rational(1, 10), Rational(1, 50)};
  const Rational fine(1, 1000);
  OracleBudget big;
  big.max_decision_nodes = 64;
  Rational worst_gap = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    GenParams p;
    p.seed = 500000 + i;
    p.internal_nodes = 2 + static_cast<int>(i % 9);
    p.chance_fraction = Rational(1, 3);
    Game g = GenRandom(p);
    const std::string where = "seed " + std::to_string(p.seed);
    Rational pure = BruteForcePure(g).leader_value;
    // Binarized nodes mix two actions, so the 1/64 grid stays small there.
    const GridFrontiers grid = GridBehavioralFrontiers(Binarize(g).game, 64, big);
    const Rational& grid64 = grid.value;
    for (const Rational& e : eps) {
      ApproxSolution a = FptasPure(g, e);
      Soundness(suite, g, a, where + " pure eps " + Str(e));
      c.Expect(a.guaranteed_value <= pure && a.guaranteed_value > pure - e, [&] {
        return where + ": fptas-pure(" + Str(e) + ") " + Str(a.guaranteed_value) +
               " oracle " + Str(pure);
      });
      ApproxSolution b = FptasBehavioral(g, e);
      Soundness(suite, g, b, where + " behavioral eps " + Str(e));
      Rational lower = LeaderFavoringResponse(g, b.strategy).u1;
      c.Expect(lower >= b.guaranteed_value, [&] {
        return where + ": replay below guarantee at eps " + Str(e);
      });
      c.Expect(grid64 < b.guaranteed_value + e, [&] {
        return where + ": grid(64) " + Str(grid64) + " exceeds fptas-behavioral(" +
               Str(e) + ") " + Str(b.guaranteed_value) + " + eps";
      });
      worst_gap = std::max(worst_gap, grid64 - b.guaranteed_value);
      std::vector<std::string> bad = InductionBViolations(b, grid);
      c.Expect(bad.empty(), [&] { return where + ": induction (b) " + bad.front(); });
    }
    ApproxSolution f = FptasBehavioral(g, fine);
    Soundness(suite, g, f, where + " behavioral eps 1/1000");
    Rational grid8 = GridBehavioral(g, 8, big);
    c.Expect(f.guaranteed_value >= grid8 - fine, [&] {
      return where + ": fptas-behavioral(1/1000) " + Str(f.guaranteed_value) +
             " below grid(8) " + Str(grid8);
    });
  }
  r.instances = 100;
  r.detail = "largest grid(64) minus guarantee: " + Str(worst_gap);
}

void Criterion6(Suite& suite, CriterionResult& r, Checker& c) {
  for (const std::string& s : suite.soundness_failures) {
    c.Expect(false, [&] { return s; });
  }
  r.instances = suite.fptas_strategies;
  r.detail = std::to_string(suite.fptas_tables) + " tables, " +
                 std::to_string(suite.fptas_strategies) + " strategies replayed";
}

void Criterion7(Suite&, CriterionResult& r, Checker& c) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    KnapsackInstance k = RandomUnitItems(700000 + i, 1 + static_cast<int>(i % 6));
    Rational v = ReductionExactBehavioral(GenKnapsackReduction(k));
    std::int64_t opt = KnapsackOptimum(k);
    c.Expect(v == Rational(opt), [&] {
      return "seed " + std::to_string(700000 + i) + ": reduction " + Str(v) +
             " knapsack " + std::to_string(opt);
    });
  }
  r.instances = 50;
  r.detail = "50 instances, N = 1..6";
}

void Criterion8(Suite& suite, CriterionResult& r, Checker& c) {
  for (const std::string& s : suite.deviation_failures) {
    c.Expect(false, [&] { return s; });
  }
  r.instances = suite.sefce_outputs;
  r.detail = std::to_string(suite.sefce_outputs) + " SEFCE outputs checked";
}

void Criterion9(Suite&, CriterionResult& r, Checker& c) {
  Game g = GenBalancedTree(10, 4, 900000);
  std::size_t leaves = 0;
  for (const Node& n : g.nodes()) leaves += n.is_leaf();
  c.Expect(leaves == 10000, [&] { return std::to_string(leaves) + " leaves"; });
  Clock::time_point t0 = Clock::now();
  SefceHulls hulls;
  CompactSefce s = SolveSefceTree(g, &hulls);
  const double solve = std::chrono::duration<double>(Clock::now() - t0).count();
  (void)s;
  std::vector<int> depth(g.num_nodes(), 0);
  std::map<int, std::size_t> per_level;
  for (NodeId id : TopologicalOrder(g)) {
    for (NodeId ch : g.node(id).Children()) depth[ch] = depth[id] + 1;
    per_level[depth[id]] += hulls.hull[id].size();
  }
  std::size_t largest = 0;
  for (const auto& [level, total] : per_level) {
    largest = std::max(largest, total);
    c.Expect(total <= leaves, [&, level = level, total = total] {
      return "level " + std::to_string(level) + " has " + std::to_string(total) +
             " hull vertices";
    });
  }
  r.instances = 1;
  std::ostringstream os;
  os.precision(3);
  os << "solve " << solve << " s, largest level total " << largest << " of "
     << leaves;
  r.detail = os.str();
}

struct CriterionDef {
  const char* name;
  double limit;
  std::vector<int> needs;
  void (*run)(Suite&, CriterionResult&, Checker&);
};

const std::map<int, CriterionDef>& Criteria() {
  static const std::map<int, CriterionDef> defs = {
      {1, {"worked example values", 1, {}, Criterion1}},
      {2, {"pure-dag vs oracle", 30, {}, Criterion2}},
      {3, {"sefce-tree vs oracle", 60, {}, Criterion3}},
      {4, {"sefce-lp vs oracle and tree", 120, {}, Criterion4}},
      {5, {"fptas guarantees", 300, {}, Criterion5}},
      {6, {"table monotonicity and replay", 300, {5}, Criterion6}},
      {7, {"reduction value", 30, {}, Criterion7}},
      {8, {"no profitable deviation", 300, {1, 3, 4}, Criterion8}},
      {9, {"10,000-leaf smoke test", 10, {}, Criterion9}},
  };
  return defs;
}

void Run(int id, Suite& suite, std::vector<CriterionResult>* out, bool report) {
  if (suite.done.count(id)) return;
  const CriterionDef& def = Criteria().at(id);
  for (int dep : def.needs) Run(dep, suite, out, false);
  CriterionResult r;
  r.id = id;
  r.name = def.name;
  r.limit_seconds = def.limit;
  Checker c(&r);
  Clock::time_point t0 = Clock::now();
  try {
    def.run(suite, r, c);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    c.Finish(r.detail);
  } catch (const std::exception& e) {
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    c.Expect(false, [&] { return std::string("exception: ") + e.what(); });
    c.Finish("");
  }
  suite.done.insert(id);
  if (report) out->push_back(r);
}

}  // namespace

std::vector<CriterionResult> RunAcceptance(const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (const auto& [id, def] : Criteria()) todo.push_back(id);
  }
  Suite suite;
  std::vector<CriterionResult> out;
  for (int id : todo) {
    if (!Criteria().count(id)) {
      throw std::invalid_argument("no criterion " + std::to_string(id));
    }
    Run(id, suite, &out, true);
  }
  return out;
}

std::string FormatResult(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), " (%.2f s / %.0f s)", r.seconds, r.limit_seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) +
         " " + r.name + ": " + r.detail + buf;
}

std::vector<int> EdgeHeights(const Game& game) {
  std::vector<int> h(game.num_nodes(), 0);
  const std::vector<NodeId> order = TopologicalOrder(game);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (NodeId c : game.node(*it).Children()) h[*it] = std::max(h[*it], h[c] + 1);
  }
  return h;
}

std::vector<std::string> InductionBViolations(const ApproxSolution& s,
                                              const GridFrontiers& f) {
  const Game& game = s.binarized.game;
  const std::vector<int> height = EdgeHeights(game);
  std::vector<std::string> out;
  for (NodeId id = 0; id < game.num_nodes(); ++id) {
    const TradeoffTable& t = s.tables[id];
    for (const Point& p : f.frontier[id]) {
      const std::int64_t k =
          ((p.y - s.params.shift) / s.params.scale).Floor() - height[id];
      if (k < 0) continue;
      const ExtRational bound = k < static_cast<std::int64_t>(t.size())
                                    ? t[k]
                                    : ExtRational::NegInf();
      if (ExtRational(p.x) > bound) {
        out.push_back("node " + std::to_string(id) + " point " + ToString(p) +
                      " beats A[" + std::to_string(k) + "]");
      }
    }
  }
  return out;
}

std::vector<std::string> InductionAViolations(const ApproxSolution& s,
                                              std::size_t max_entries) {
  const Game& game = s.binarized.game;
  std::vector<std::string> out;
  for (NodeId id = 0; id < game.num_nodes(); ++id) {
    const TradeoffTable& t = s.tables[id];
    std::int64_t last = static_cast<std::int64_t>(t.size()) - 1;
    while (last >= 0 && !t[last].is_finite()) --last;
    if (last < 0) continue;
    const std::int64_t step =
        std::max<std::int64_t>(1, (last + 1) / static_cast<std::int64_t>(max_entries));
    for (std::int64_t k = last; k >= 0; k -= step) {
      BehavioralStrategy sub = ReconstructOnBinarized(s, id, k);
      ResponseValue v = LeaderFavoringResponse(game, sub, id);
      const Rational floor = s.params.shift + Rational(k) * s.params.scale;
      if (ExtRational(v.u2) != t[k] || v.u1 < floor) {
        out.push_back("node " + std::to_string(id) + " k " + std::to_string(k) +
                      ": offers " + Str(v.u2) + " secures " + Str(v.u1));
      }
    }
  }
  return out;
}

}  // namespace stackel
