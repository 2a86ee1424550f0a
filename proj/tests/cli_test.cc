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

// Drives the built stackel binary.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "stackel/game_io.h"
#include "stackel/geometry.h"
#include "stackel/instances.h"

namespace stackel {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result Cli(const std::string& args) {
  const std::string cmd = std::string(STACKEL_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Result r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Dir(const std::string& name) {
  fs::path d = fs::path(::testing::TempDir()) / ("stackel_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d.string();
}

std::string WriteGame(const Game& g, const std::string& dir, const std::string& name) {
  const std::string path = (fs::path(dir) / name).string();
  WriteGameFile(g, path);
  return path;
}

std::string Slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<Point> ReadCsv(const std::string& path) {
  std::vector<Point> pts;
  std::istringstream in(Slurp(path));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y");
  while (std::getline(in, line)) {
    const std::size_t c = line.find(',');
    pts.push_back({Rational::Parse(line.substr(0, c)), Rational::Parse(line.substr(c + 1))});
  }
  return pts;
}

TEST(CliTest, ExampleFig1Values) {
  const std::string dir = Dir("fig1");
  const std::string game = WriteGame(ExampleFig1(), dir, "fig1.json");
  for (const char* alg : {"sefce-tree", "sefce-lp"}) {
    Result r = Cli(std::string("solve --algorithm ") + alg + " " + game);
    ASSERT_EQ(r.code, 0) << alg;
    nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["value"], "3/2") << alg;
  }
  Result o = Cli("oracle --method sefce " + game);
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(nlohmann::json::parse(o.out)["value"], "3/2");
  Result d = Cli("solve --algorithm sefce-tree --decimal 2 " + game);
  EXPECT_EQ(nlohmann::json::parse(d.out)["value_decimal"], "1.50");
}

TEST(CliTest, ExitCodes) {
  const std::string dir = Dir("codes");
  const std::string cyc = (fs::path(dir) / "cyc.json").string();
  std::ofstream(cyc) << R"({"graph":"tree","root":0,"nodes":[)"
                     << R"({"id":0,"kind":"leader","actions":[["a",1]]},)"
                     << R"({"id":1,"kind":"leader","actions":[["b",0]]}]})";
  EXPECT_EQ(Cli("validate " + cyc).code, 2);
  EXPECT_EQ(Cli("solve --algorithm sefce-tree " + cyc).code, 2);
  const std::string game = WriteGame(ExampleFig1(), dir, "fig1.json");
  EXPECT_EQ(Cli("validate " + game).code, 0);
  EXPECT_EQ(Cli("solve --algorithm sefce-tree --no-such-flag " + game).code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  EXPECT_EQ(Cli("solve --algorithm magic " + game).code, 1);
  EXPECT_EQ(Cli("solve --algorithm fptas-pure --epsilon 0 " + game).code, 1);
  EXPECT_EQ(Cli("solve --algorithm pure-dag " + dir + "/missing.json").code, 1);
  EXPECT_EQ(Cli("oracle --method reduction " + game).code, 2);
  EXPECT_EQ(Cli("oracle --method pure " + game + " --grid 2").code, 0);
  const std::string env = "STACKEL_BUDGET_NODES=1 ";
  const std::string cmd = env + STACKEL_CLI + " oracle --method pure " + game +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
}

TEST(CliTest, Deterministic) {
  const std::string dir = Dir("det");
  GenParams p;
  p.seed = 17;
  const std::string game = WriteGame(GenRandom(p), dir, "g.json");
  for (const char* alg : {"pure-dag", "sefce-tree", "sefce-lp", "fptas-behavioral",
                          "fptas-pure", "minmax"}) {
    const std::string args = std::string("solve --algorithm ") + alg + " " + game;
    Result a = Cli(args), b = Cli(args);
    ASSERT_EQ(a.code, 0) << alg;
    EXPECT_EQ(a.out, b.out) << alg;
  }
  GameBuilder b;
  NodeId x = b.Leaf(2, 0), y = b.Leaf(4, 0);
  Game chance = b.Build(b.Chance({{Rational(1, 2), x}, {Rational(1, 2), y}}));
  EXPECT_EQ(Cli("solve --algorithm pure-dag " + WriteGame(chance, dir, "c.json")).code, 2);
}

TEST(CliTest, GenSolvePipeline) {
  const std::string dir = Dir("gen");
  const std::string game = (fs::path(dir) / "k.json").string();
  ASSERT_EQ(Cli("gen --kind knapsack --items 3 --seed 4 -o " + game).code, 0);
  Result r = Cli("oracle --method reduction " + game);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"],
            std::to_string(KnapsackOptimum(RandomUnitItems(4, 3))));
  Result g = Cli("gen --kind random --seed 3 --internal-nodes 5");
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(ParseGame(g.out), [] {
    GenParams p;
    p.seed = 3;
    p.internal_nodes = 5;
    return GenRandom(p);
  }());
  const std::string lp = (fs::path(dir) / "k.lp").string();
  ASSERT_EQ(Cli("solve --algorithm sefce-lp --dump-lp " + lp + " " + game).code, 0);
  EXPECT_NE(Slurp(lp).find("Subject To"), std::string::npos);
  const std::string tables = (fs::path(dir) / "tables").string();
  const std::string fig = WriteGame(ExampleFig1(), dir, "fig1.json");
  ASSERT_EQ(Cli("solve --algorithm fptas-behavioral --epsilon 1/4 --dump-tables " +
                tables + " " + fig).code, 0);
  EXPECT_TRUE(fs::exists(fs::path(tables) / "table_0.csv"));
}

TEST(CliTest, HullFiles) {
  const std::string dir = Dir("hull");
  GameBuilder b;
  Game leaf = b.Build(b.Leaf(4, 7));
  const std::string one = WriteGame(leaf, dir, "leaf.json");
  ASSERT_EQ(Cli("hull --out " + dir + "/leaf " + one).code, 0);
  std::vector<Point> pts = ReadCsv(dir + "/leaf/node_0.csv");
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], (Point{7, 4}));

  Game fig = ExampleFig1();
  const std::string game = WriteGame(fig, dir, "fig1.json");
  ASSERT_EQ(Cli("hull --out " + dir + "/fig " + game).code, 0);
  Hull2D root;
  root.vertices = ReadCsv(dir + "/fig/node_" + std::to_string(fig.root()) + ".csv");
  EXPECT_TRUE(OnBoundary(root, {2, Rational(3, 2)}));
  ASSERT_EQ(Cli("hull --format svg --out " + dir + "/svg " + game).code, 0);
  const std::string svg = Slurp(dir + "/svg/node_1.svg");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find(">u2<"), std::string::npos);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenParams p;
    p.seed = 50 + seed;
    p.internal_nodes = 3 + static_cast<int>(seed % 8);
    p.chance_fraction = seed % 2 ? Rational(1, 4) : Rational(0);
    Game g = GenRandom(p);
    std::size_t leaves = 0;
    for (const Node& n : g.nodes()) leaves += n.is_leaf();
    const std::string sub = dir + "/r" + std::to_string(seed);
    ASSERT_EQ(Cli("hull --out " + sub + " " + WriteGame(g, dir, "r.json")).code, 0);
    for (NodeId id = 0; id < g.num_nodes(); ++id) {
      EXPECT_LE(ReadCsv(sub + "/node_" + std::to_string(id) + ".csv").size(), leaves);
    }
  }
}

TEST(CliTest, SelftestSubset) {
  Result r = Cli("selftest 1 7");
  EXPECT_EQ(r.code, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["criteria"].size(), 2u);
}

}  // namespace
}  // namespace stackel
