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

// stackel: validate, classify, solve and generate sequential games.
//
// JSON goes to stdout, a human summary to stderr. Exit codes: 0 success,
// 1 usage or I/O error, 2 invalid game, 3 budget refusal, 4 failed
// self-check or internal error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "stackel/acceptance.h"
#include "stackel/fptas.h"
#include "stackel/game.h"
#include "stackel/game_io.h"
#include "stackel/hull_io.h"
#include "stackel/instances.h"
#include "stackel/lp.h"
#include "stackel/minmax.h"
#include "stackel/oracle.h"
#include "stackel/pure_dag.h"
#include "stackel/sefce_lp.h"
#include "stackel/sefce_tree.h"

namespace stackel {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;
constexpr int kCheckFailed = 4;

class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string S(const Rational& r) { return r.ToString(); }

std::string S(const ExtRational& r) {
  if (r.is_finite()) return r.value().ToString();
  return r > ExtRational(Rational(0)) ? "inf" : "-inf";
}

// Rounded to `digits` places, half away from zero.
std::string Decimal(const Rational& r, int digits) {
  mpq_class q = r.ToMpq();
  const bool neg = q < 0;
  if (neg) q = -q;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpq_class shifted = q * scale + mpq_class(1, 2);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  std::string s = n.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, digits + 1 - s.size(), '0');
    }
    s.insert(s.size() - digits, ".");
  }
  if (neg && n != 0) s.insert(0, "-");
  return s;
}

Json MixJson(const BehavioralStrategy& s) {
  Json out = Json::object();
  for (const auto& [node, mix] : s.mix) {
    Json m = Json::array();
    for (const Rational& p : mix) m.push_back(S(p));
    out[std::to_string(node)] = m;
  }
  return out;
}

Json PureJson(const PureStrategy& s) {
  Json out = Json::object();
  for (const auto& [node, a] : s.choice) out[std::to_string(node)] = a;
  return out;
}

Json CompactJson(const CompactSefce& c) {
  Json out;
  out["on_path"] = Json(std::vector<NodeId>(c.on_path.begin(), c.on_path.end()));
  out["leader"] = MixJson(c.leader);
  out["signals"] = MixJson(c.follower);
  Json joint = Json::object();
  for (const auto& [node, cells] : c.joint) {
    Json m = Json::array();
    for (const Rational& p : cells) m.push_back(S(p));
    joint[std::to_string(node)] = m;
  }
  out["joint"] = joint;
  out["punishment"] = MixJson(c.punishment.punish_leader);
  return out;
}

// Shared envelope for every JSON record.
struct Run {
  std::string command;
  std::vector<std::string> argv;
  std::optional<int> decimal;
  Json body = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void Value(const std::string& key, const Rational& v) {
    body[key] = S(v);
    if (decimal) body[key + "_decimal"] = Decimal(v, *decimal);
  }

  void Print() const {
    Json out;
    out["schema"] = 1;
    out["command"] = command;
    out["argv"] = argv;
    for (const auto& [k, v] : body.items()) out[k] = v;
    out["output_digest"] = Fnv1aHex(out.dump());
    std::cout << out.dump(2) << "\n";
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::fprintf(stderr, "%s: done in %.3f s\n", command.c_str(), secs);
  }
};

Game Load(const std::string& path, Run& run) {
  Game g = ReadGameFile(path);
  CheckValid(g);
  run.body["input"] = path;
  run.body["input_digest"] = Fnv1aHex(SerializeGame(g));
  return g;
}

Json ClassJson(const GameClass& c) {
  return Json{{"graph", ToString(c.graph)},
              {"information", ToString(c.info)},
              {"chance", c.chance}};
}

int Validate(const std::string& path, Run& run) {
  Game g = ReadGameFile(path);
  ValidationReport rep = stackel::Validate(g);
  run.body["input"] = path;
  run.body["input_digest"] = Fnv1aHex(SerializeGame(g));
  run.body["valid"] = rep.ok();
  Json v = Json::array();
  for (const Violation& x : rep.violations) {
    v.push_back({{"kind", ToString(x.kind)}, {"node", x.node}, {"message", x.message}});
    std::cerr << "node " << x.node << ": " << x.message << "\n";
  }
  run.body["violations"] = v;
  run.Print();
  return rep.ok() ? 0 : kInvalid;
}

int Classify(const std::string& path, Run& run) {
  Game g = Load(path, run);
  run.body["class"] = ClassJson(stackel::Classify(g));
  std::size_t leaves = 0;
  for (const Node& n : g.nodes()) leaves += n.is_leaf();
  run.body["nodes"] = g.num_nodes();
  run.body["decision_nodes"] = CountDecisionNodes(g);
  run.body["leaves"] = leaves;
  run.Print();
  return 0;
}

struct SolveOptions {
  std::string algorithm;
  std::string epsilon = "1/10";
  std::string dump_hulls;
  std::string hull_format = "csv";
  std::string dump_lp;
  std::string dump_tables;
  bool dump_capacities = false;
  bool expand = false;
};

void CheckDeviation(const Game& g, const CompactSefce& c, Run& run) {
  DeviationReport rep = VerifyNoDeviation(g, c);
  run.body["check"] = {{"no_deviation", rep.ok()}};
  if (!rep.ok()) throw CheckFailure("profitable deviation in solver output");
}

void CheckReplay(const Game& g, const BehavioralStrategy& leader,
                 const Rational& promised, Run& run) {
  const Rational replay = LeaderFavoringResponse(g, leader).u1;
  run.body["check"] = {{"replay_value", S(replay)}, {"replay_ok", replay >= promised}};
  if (replay < promised) throw CheckFailure("replay below the reported value");
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) throw std::runtime_error(path + ": write failed");
}

int Solve(const std::string& path, const SolveOptions& o, Run& run) {
  Game g = Load(path, run);
  run.body["algorithm"] = o.algorithm;
  if (o.algorithm == "pure-dag") {
    PureCommitmentSolution s = SolvePureDag(g);
    run.Value("value", s.leader_value);
    run.Value("follower_value", s.follower_value);
    run.body["chosen_leaf"] = s.chosen_leaf;
    run.body["leader"] = PureJson(s.leader);
    run.body["follower"] = PureJson(s.follower);
    if (o.dump_capacities) {
      CapacityTable caps = ComputeCapacities(g, ComputeMinmax(g));
      Json c = Json::array();
      for (const ExtRational& x : caps.gamma) c.push_back(S(x));
      run.body["capacities"] = c;
      run.body["possible_outcomes"] = PossibleOutcomes(g, caps);
    }
    CheckReplay(g, ToBehavioral(g, s.leader), s.leader_value, run);
    std::cerr << "pure commitment value " << S(s.leader_value) << ", leaf "
              << s.chosen_leaf << "\n";
  } else if (o.algorithm == "sefce-tree") {
    SefceHulls hulls;
    CompactSefce c = SolveSefceTree(g, &hulls);
    run.Value("value", c.value.y);
    run.Value("follower_value", c.value.x);
    run.body["solution"] = CompactJson(c);
    if (o.expand) {
      ExplicitDistribution d = ExpandCompact(g, c);
      Json sup = Json::array();
      for (const ProfileWeight& w : d.support) {
        sup.push_back({{"probability", S(w.probability)},
                       {"leader", PureJson(w.leader)},
                       {"follower", PureJson(w.follower)}});
      }
      run.body["distribution"] = sup;
    }
    if (!o.dump_hulls.empty()) {
      HullFormat f = o.hull_format == "svg" ? HullFormat::kSvg : HullFormat::kCsv;
      run.body["hull_files"] = EmitHulls(g, hulls, o.dump_hulls, f);
    }
    CheckDeviation(g, c, run);
    std::cerr << "SEFCE value " << S(c.value.y) << " (follower " << S(c.value.x)
              << ")\n";
  } else if (o.algorithm == "sefce-lp") {
    FlowSolution f = SolveSefceConcurrent(g);
    run.Value("value", f.leader_value);
    Json delta = Json::array();
    for (const Rational& d : f.delta) delta.push_back(S(d));
    run.body["delta"] = delta;
    run.body["pivots"] = f.pivots;
    run.body["solution"] = CompactJson(f.compact);
    if (!o.dump_lp.empty()) WriteText(o.dump_lp, ToLpFormat(BuildSefceLp(g, ComputeMinmax(g))));
    CheckDeviation(g, f.compact, run);
    std::cerr << "SEFCE LP value " << S(f.leader_value) << " after " << f.pivots
              << " pivots\n";
  } else if (o.algorithm == "fptas-behavioral" || o.algorithm == "fptas-pure") {
    const Rational eps = Rational::Parse(o.epsilon);
    ApproxSolution a = o.algorithm == "fptas-pure" ? FptasPure(g, eps)
                                                   : FptasBehavioral(g, eps);
    run.Value("value", a.guaranteed_value);
    run.body["parameters"] = {{"epsilon", S(a.params.epsilon)},
                              {"shift", S(a.params.shift)},
                              {"spread", S(a.params.spread)},
                              {"levels", a.params.levels},
                              {"scale", S(a.params.scale)},
                              {"n", a.params.n}};
    run.body["root_index"] = a.root_index;
    run.body["leader"] = MixJson(a.strategy);
    if (!o.dump_tables.empty()) {
      std::filesystem::create_directories(o.dump_tables);
      Json files = Json::array();
      for (NodeId id = 0; id < a.tables.size(); ++id) {
        std::string text = "k,value\n";
        for (std::size_t k = 0; k < a.tables[id].size(); ++k) {
          text += std::to_string(k) + "," + S(a.tables[id][k]) + "\n";
        }
        const std::string p =
            (std::filesystem::path(o.dump_tables) /
             ("table_" + std::to_string(id) + ".csv")).string();
        WriteText(p, text);
        files.push_back(p);
      }
      run.body["table_files"] = files;
    }
    CheckReplay(g, a.strategy, a.guaranteed_value, run);
    std::cerr << o.algorithm << " guarantees " << S(a.guaranteed_value)
              << " with n = " << a.params.n << "\n";
  } else if (o.algorithm == "minmax") {
    MinmaxTable t = ComputeMinmax(g);
    run.Value("value", t.mu[g.root()]);
    Json mu = Json::array();
    for (const Rational& m : t.mu) mu.push_back(S(m));
    run.body["mu"] = mu;
    run.body["punish_leader"] = MixJson(t.punish_leader);
    run.body["punish_follower"] = MixJson(t.punish_follower);
    const Rational u2 = LeaderFavoringResponse(g, t.punish_leader).u2;
    run.body["check"] = {{"replay_follower_value", S(u2)}};
    if (u2 != t.mu[g.root()]) throw CheckFailure("punishment replay differs from mu");
    std::cerr << "follower threat value " << S(t.mu[g.root()]) << "\n";
  } else {
    throw std::invalid_argument("unknown algorithm " + o.algorithm);
  }
  run.Print();
  return 0;
}

int Oracle(const std::string& path, const std::string& method, int grid, Run& run) {
  Game g = Load(path, run);
  OracleBudget budget = OracleBudget::FromEnv();
  run.body["method"] = method;
  if (method == "pure") {
    PureCommitmentSolution s = BruteForcePure(g, budget);
    run.Value("value", s.leader_value);
    run.Value("follower_value", s.follower_value);
    run.body["chosen_leaf"] = s.chosen_leaf;
    run.body["leader"] = PureJson(s.leader);
  } else if (method == "sefce") {
    SefceOracleResult r = BruteForceSefce(g, budget);
    run.Value("value", r.value);
    run.body["profiles"] = r.profiles;
    run.body["columns"] = r.columns;
    Json sup = Json::array();
    for (const ProfileWeight& w : r.dist.support) {
      sup.push_back({{"probability", S(w.probability)},
                     {"leader", PureJson(w.leader)},
                     {"follower", PureJson(w.follower)}});
    }
    run.body["distribution"] = sup;
  } else if (method == "grid") {
    GridFrontiers f = GridBehavioralFrontiers(g, grid, budget);
    run.body["grid"] = grid;
    run.Value("value", f.value);
    run.body["work"] = f.work;
  } else if (method == "reduction") {
    run.Value("value", ReductionExactBehavioral(g, budget));
  } else {
    throw std::invalid_argument("unknown oracle method " + method);
  }
  std::cerr << method << " oracle value " << run.body["value"].get<std::string>() << "\n";
  run.Print();
  return 0;
}

struct GenOptions {
  std::string kind = "random";
  std::uint64_t seed = 1;
  int internal_nodes = 8;
  int max_branching = 3;
  std::string chance = "0";
  std::string concurrent = "0";
  std::string follower = "1/2";
  std::int64_t utility_lo = 0;
  std::int64_t utility_hi = 5;
  bool dag = false;
  std::string merge = "1/3";
  int branching = 10;
  int depth = 4;
  int items = 3;
  std::string out;
};

int Gen(const GenOptions& o) {
  Game g;
  if (o.kind == "random") {
    GenParams p;
    p.seed = o.seed;
    p.internal_nodes = o.internal_nodes;
    p.max_branching = o.max_branching;
    p.chance_fraction = Rational::Parse(o.chance);
    p.concurrent_fraction = Rational::Parse(o.concurrent);
    p.follower_fraction = Rational::Parse(o.follower);
    p.utility_lo = o.utility_lo;
    p.utility_hi = o.utility_hi;
    p.graph = o.dag ? GraphKind::kDag : GraphKind::kTree;
    p.merge_fraction = Rational::Parse(o.merge);
    if (p.concurrent_fraction.sign() > 0) p.info = Information::kConcurrent;
    g = GenRandom(p);
  } else if (o.kind == "balanced") {
    g = GenBalancedTree(o.branching, o.depth, o.seed, o.utility_hi);
  } else if (o.kind == "knapsack") {
    g = GenKnapsackReduction(RandomUnitItems(o.seed, o.items));
  } else if (o.kind == "example-fig1") {
    g = ExampleFig1();
  } else {
    throw std::invalid_argument("unknown generator " + o.kind);
  }
  if (o.out.empty()) {
    std::cout << SerializeGame(g);
  } else {
    WriteGameFile(g, o.out);
  }
  std::cerr << "generated " << g.num_nodes() << " nodes, digest "
            << Fnv1aHex(SerializeGame(g)) << "\n";
  return 0;
}

int Hull(const std::string& path, const std::string& format, const std::string& dir,
         std::optional<NodeId> node, Run& run) {
  Game g = Load(path, run);
  SefceHulls hulls = UpwardPass(g, ComputeMinmax(g));
  if (dir.empty()) {
    const NodeId id = node.value_or(g.root());
    if (id >= g.num_nodes()) throw std::invalid_argument("no node " + std::to_string(id));
    // Bare CSV or SVG for one node, no JSON envelope.
    std::cout << (format == "svg" ? HullSvg(hulls.hull[id], {}, "node " + std::to_string(id))
                                  : HullCsv(hulls.hull[id]));
    return 0;
  }
  run.body["files"] = EmitHulls(g, hulls, dir, format == "svg" ? HullFormat::kSvg
                                                                : HullFormat::kCsv);
  run.Print();
  return 0;
}

int Selftest(const std::vector<int>& ids, Run& run) {
  bool ok = true;
  Json list = Json::array();
  for (const CriterionResult& r : RunAcceptance(ids)) {
    std::cerr << FormatResult(r) << "\n";
    ok = ok && r.passed;
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"instances", r.instances},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds},
                    {"detail", r.detail}});
  }
  run.body["criteria"] = list;
  run.body["passed"] = ok;
  run.Print();
  return ok ? 0 : kCheckFailed;
}

int Main(int argc, char** argv) {
  CLI::App app{"Stackelberg and SEFCE solvers for two-player sequential games"};
  app.require_subcommand(1);
  Run run;
  for (int i = 1; i < argc; ++i) run.argv.push_back(argv[i]);
  int digits = -1;

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check a game file");
  validate->add_option("game", path, "Game JSON")->required();
  auto* classify = app.add_subcommand("classify", "Report graph shape and move structure");
  classify->add_option("game", path, "Game JSON")->required();

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Run a solver");
  solve->add_option("game", path, "Game JSON")->required();
  solve->add_option("--algorithm", so.algorithm)
      ->required()
      ->check(CLI::IsMember({"pure-dag", "sefce-tree", "sefce-lp", "fptas-behavioral",
                             "fptas-pure", "minmax"}));
  solve->add_option("--epsilon", so.epsilon, "FPTAS accuracy p/q");
  solve->add_option("--dump-hulls", so.dump_hulls, "Directory for per-node hulls");
  solve->add_option("--hull-format", so.hull_format)->check(CLI::IsMember({"csv", "svg"}));
  solve->add_option("--dump-lp", so.dump_lp, "File for the SEFCE LP");
  solve->add_option("--dump-tables", so.dump_tables, "Directory for FPTAS tables");
  solve->add_flag("--dump-capacities", so.dump_capacities);
  solve->add_flag("--expand", so.expand, "Expand SEFCE to a profile distribution");

  std::string method;
  int grid = 4;
  auto* oracle = app.add_subcommand("oracle", "Run an exhaustive reference solver");
  oracle->add_option("game", path, "Game JSON")->required();
  oracle->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"pure", "sefce", "grid", "reduction"}));
  oracle->add_option("--grid", grid, "Grid denominator")->check(CLI::PositiveNumber);

  for (CLI::App* sub : {solve, oracle}) {
    sub->add_option("--decimal", digits, "Also print values rounded to this many places")
        ->check(CLI::Range(0, 60));
  }

  GenOptions go;
  auto* gen = app.add_subcommand("gen", "Generate a game");
  gen->add_option("--kind", go.kind)
      ->check(CLI::IsMember({"random", "balanced", "knapsack", "example-fig1"}));
  gen->add_option("--seed", go.seed);
  gen->add_option("--internal-nodes", go.internal_nodes);
  gen->add_option("--max-branching", go.max_branching);
  gen->add_option("--chance", go.chance);
  gen->add_option("--concurrent", go.concurrent);
  gen->add_option("--follower", go.follower);
  gen->add_option("--utility-lo", go.utility_lo);
  gen->add_option("--utility-hi", go.utility_hi);
  gen->add_flag("--dag", go.dag);
  gen->add_option("--merge", go.merge);
  gen->add_option("--branching", go.branching);
  gen->add_option("--depth", go.depth);
  gen->add_option("--items", go.items);
  gen->add_option("-o,--out", go.out, "Write to a file instead of stdout");

  std::string format = "csv", dir;
  std::optional<NodeId> node;
  auto* hull = app.add_subcommand("hull", "Emit SEFCE hulls");
  hull->add_option("game", path, "Game JSON")->required();
  hull->add_option("--format", format)->check(CLI::IsMember({"csv", "svg"}));
  hull->add_option("--out", dir, "Directory for one file per node");
  hull->add_option("--node", node, "Print one node's hull to stdout");

  std::vector<int> criteria;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest->add_option("criteria", criteria, "Criteria to run (default all)")
      ->check(CLI::Range(1, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  if (digits >= 0) run.decimal = digits;

  try {
    if (*validate) return run.command = "validate", Validate(path, run);
    if (*classify) return run.command = "classify", Classify(path, run);
    if (*solve) return run.command = "solve", Solve(path, so, run);
    if (*oracle) return run.command = "oracle", Oracle(path, method, grid, run);
    if (*gen) return Gen(go);
    if (*hull) return run.command = "hull", Hull(path, format, dir, node, run);
    if (*selftest) return run.command = "selftest", Selftest(criteria, run);
  } catch (const ParseError& e) {
    std::cerr << "invalid game: " << e.what() << "\n";
    return kInvalid;
  } catch (const GameError& e) {
    std::cerr << "invalid game: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kBudget;
  } catch (const std::length_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kBudget;
  } catch (const CheckFailure& e) {
    std::cerr << "self-check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace
}  // namespace stackel

int main(int argc, char** argv) { return stackel::Main(argc, argv); }
