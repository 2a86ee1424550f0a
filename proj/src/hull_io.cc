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

#include "stackel/hull_io.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stackel {
namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string HullCsv(const Hull2D& h) {
  std::string out = "x,y\n";
  for (const Point& p : h.vertices) {
    out += p.x.ToString() + "," + p.y.ToString() + "\n";
  }
  return out;
}

std::string HullSvg(const Hull2D& h, const std::vector<Rational>& cuts,
                    const std::string& title) {
  const double size = 400, pad = 40;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  auto grow = [&](double x, double y) {
    if (first) {
      x0 = x1 = x;
      y0 = y1 = y;
      first = false;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const Point& p : h.vertices) grow(p.x.ToDouble(), p.y.ToDouble());
  for (const Rational& c : cuts) grow(c.ToDouble(), first ? 0 : y0);
  if (x1 - x0 < 1e-9) { x0 -= 1; x1 += 1; }
  if (y1 - y0 < 1e-9) { y0 -= 1; y1 += 1; }
  auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * (size - 2 * pad); };
  auto sy = [&](double y) { return size - pad - (y - y0) / (y1 - y0) * (size - 2 * pad); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
     << "\" height=\"" << size << "\">\n";
  os << "<title>" << title << "</title>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << size - pad << "\" x2=\""
     << size - pad << "\" y2=\"" << size - pad << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad
     << "\" y2=\"" << size - pad << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << size / 2 << "\" y=\"" << size - 8 << "\">u2</text>\n";
  os << "<text x=\"8\" y=\"" << size / 2 << "\">u1</text>\n";
  os << "<text x=\"" << pad << "\" y=\"" << size - pad + 16 << "\">" << Num(x0)
     << "</text><text x=\"" << size - pad << "\" y=\"" << size - pad + 16
     << "\">" << Num(x1) << "</text>\n";
  os << "<text x=\"2\" y=\"" << size - pad << "\">" << Num(y0)
     << "</text><text x=\"2\" y=\"" << pad << "\">" << Num(y1) << "</text>\n";
  for (const Rational& c : cuts) {
    const double x = sx(c.ToDouble());
    os << "<line x1=\"" << Num(x) << "\" y1=\"" << pad << "\" x2=\"" << Num(x)
       << "\" y2=\"" << size - pad
       << "\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n";
  }
  if (h.size() == 1) {
    const Point& p = h.vertices[0];
    os << "<circle cx=\"" << Num(sx(p.x.ToDouble())) << "\" cy=\""
       << Num(sy(p.y.ToDouble())) << "\" r=\"3\" fill=\"blue\"/>\n";
  } else if (!h.empty()) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (i) os << " ";
      os << Num(sx(h.vertices[i].x.ToDouble())) << ","
         << Num(sy(h.vertices[i].y.ToDouble()));
    }
    os << "\" fill=\"lightblue\" stroke=\"blue\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> EmitHulls(const Game& game, const SefceHulls& hulls,
                                   const std::string& dir, HullFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir + ": " + ec.message());
  std::vector<std::vector<Rational>> cuts(game.num_nodes());
  for (const auto& [node, thresholds] : hulls.threshold) {
    const std::vector<NodeId> kids = game.node(node).Children();
    for (std::size_t a = 0; a < kids.size() && a < thresholds.size(); ++a) {
      if (thresholds[a].is_finite()) cuts[kids[a]].push_back(thresholds[a].value());
    }
  }
  std::vector<std::string> paths;
  for (NodeId id = 0; id < game.num_nodes(); ++id) {
    const std::string path =
        (std::filesystem::path(dir) /
         ("node_" + std::to_string(id) + (format == HullFormat::kCsv ? ".csv" : ".svg")))
            .string();
    std::ofstream f(path, std::ios::binary);
    if (format == HullFormat::kCsv) {
      f << HullCsv(hulls.hull[id]);
    } else {
      f << HullSvg(hulls.hull[id], cuts[id], "node " + std::to_string(id));
    }
    f.close();
    if (!f) throw std::runtime_error(path + ": write failed");
    paths.push_back(path);
  }
  return paths;
}

}  // namespace stackel
