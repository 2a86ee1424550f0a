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

#include "stackel/game_io.h"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace stackel {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ParseError(path.empty() ? "/" : path, what);
}

const Json& Field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string Str(const Json& v, const std::string& path) {
  if (!v.is_string()) Fail(path, "expected a string");
  return v.get<std::string>();
}

std::uint64_t Index(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  Fail(path, "expected a non-negative integer");
}

NodeId Id(const Json& v, const std::string& path) {
  std::uint64_t i = Index(v, path);
  if (i > std::numeric_limits<NodeId>::max()) Fail(path, "node id too large");
  return static_cast<NodeId>(i);
}

Rational Rat(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    std::uint64_t u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      return Rational::Parse(std::to_string(u));
    }
    return Rational(static_cast<std::int64_t>(u));
  }
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Rational::Parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      Fail(path, e.what());
    }
  }
  Fail(path, "expected a rational as \"p/q\" string or integer");
}

const Json& Array(const Json& v, const std::string& path) {
  if (!v.is_array()) Fail(path, "expected an array");
  return v;
}

std::vector<std::string> Labels(const Json& v, const std::string& path) {
  std::vector<std::string> out;
  const Json& arr = Array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(Str(arr[i], path + "/" + std::to_string(i)));
  }
  return out;
}

Node ParseNode(const Json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected a node object");
  Node node;
  node.id = Id(Field(j, "id", path), path + "/id");
  std::string kind = Str(Field(j, "kind", path), path + "/kind");
  if (kind == "leaf") {
    node.kind = NodeKind::kLeaf;
    const std::string up = path + "/u";
    const Json& u = Array(Field(j, "u", path), up);
    if (u.size() != 2) Fail(up, "expected [u1, u2]");
    node.u1 = Rat(u[0], up + "/0");
    node.u2 = Rat(u[1], up + "/1");
  } else if (kind == "leader" || kind == "follower") {
    node.kind = kind == "leader" ? NodeKind::kLeader : NodeKind::kFollower;
    const std::string ap = path + "/actions";
    const Json& acts = Array(Field(j, "actions", path), ap);
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const std::string p = ap + "/" + std::to_string(i);
      const Json& a = Array(acts[i], p);
      if (a.size() != 2) Fail(p, "expected [label, child]");
      node.actions.push_back({Str(a[0], p + "/0"), Id(a[1], p + "/1")});
    }
  } else if (kind == "concurrent") {
    node.kind = NodeKind::kConcurrent;
    node.rows = Labels(Field(j, "rows", path), path + "/rows");
    node.cols = Labels(Field(j, "cols", path), path + "/cols");
    const std::string cp = path + "/cells";
    const Json& cells = Array(Field(j, "cells", path), cp);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      node.cells.push_back(Id(cells[i], cp + "/" + std::to_string(i)));
    }
  } else if (kind == "chance") {
    node.kind = NodeKind::kChance;
    const std::string bp = path + "/branches";
    const Json& br = Array(Field(j, "branches", path), bp);
    for (std::size_t i = 0; i < br.size(); ++i) {
      const std::string p = bp + "/" + std::to_string(i);
      const Json& b = Array(br[i], p);
      if (b.size() != 2) Fail(p, "expected [probability, child]");
      node.branches.push_back({Rat(b[0], p + "/0"), Id(b[1], p + "/1")});
    }
  } else {
    Fail(path + "/kind", "unknown node kind \"" + kind + "\"");
  }
  return node;
}

Json NodeJson(const Node& node) {
  Json j;
  j["id"] = node.id;
  j["kind"] = ToString(node.kind);
  switch (node.kind) {
    case NodeKind::kLeaf:
      j["u"] = Json::array({node.u1.ToString(), node.u2.ToString()});
      break;
    case NodeKind::kLeader:
    case NodeKind::kFollower: {
      Json acts = Json::array();
      for (const Action& a : node.actions) {
        acts.push_back(Json::array({a.label, a.child}));
      }
      j["actions"] = std::move(acts);
      break;
    }
    case NodeKind::kConcurrent:
      j["rows"] = node.rows;
      j["cols"] = node.cols;
      j["cells"] = node.cells;
      break;
    case NodeKind::kChance: {
      Json br = Json::array();
      for (const ChanceBranch& b : node.branches) {
        br.push_back(Json::array({b.probability.ToString(), b.child}));
      }
      j["branches"] = std::move(br);
      break;
    }
  }
  return j;
}

}  // namespace

Game ParseGame(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (auto pos = what.find("] "); pos != std::string::npos) {
      what = what.substr(pos + 2);
    }
    throw ParseError("byte " + std::to_string(e.byte), what);
  }
  if (!doc.is_object()) Fail("", "expected a JSON object");
  std::string graph = Str(Field(doc, "graph", ""), "/graph");
  GraphKind kind;
  if (graph == "tree") {
    kind = GraphKind::kTree;
  } else if (graph == "dag") {
    kind = GraphKind::kDag;
  } else {
    Fail("/graph", "expected \"tree\" or \"dag\", got \"" + graph + "\"");
  }
  NodeId root = Id(Field(doc, "root", ""), "/root");
  const Json& list = Array(Field(doc, "nodes", ""), "/nodes");
  std::vector<Node> nodes(list.size());
  std::vector<bool> filled(list.size(), false);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "/nodes/" + std::to_string(i);
    Node node = ParseNode(list[i], path);
    if (node.id >= list.size()) {
      Fail(path + "/id", "id " + std::to_string(node.id) +
                             " outside dense range 0.." +
                             std::to_string(list.size() - 1));
    }
    if (filled[node.id]) {
      Fail(path + "/id", "duplicate id " + std::to_string(node.id));
    }
    filled[node.id] = true;
    NodeId id = node.id;
    nodes[id] = std::move(node);
  }
  return Game(kind, root, std::move(nodes));
}

std::string SerializeGame(const Game& game) {
  std::string out = "{\n  \"graph\": \"" + ToString(game.graph()) +
                    "\",\n  \"root\": " + std::to_string(game.root()) +
                    ",\n  \"nodes\": [";
  for (std::size_t i = 0; i < game.num_nodes(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    out += NodeJson(game.nodes()[i]).dump();
  }
  out += game.num_nodes() == 0 ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

Game ReadGameFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseGame(buf.str());
}

void WriteGameFile(const Game& game, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << SerializeGame(game);
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string Fnv1aHex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace stackel
