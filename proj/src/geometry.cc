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

#include "stackel/geometry.h"

#include <algorithm>
#include <queue>
#include <tuple>

namespace stackel {

std::string ToString(const Point& p) {
  return "(" + p.x.ToString() + ", " + p.y.ToString() + ")";
}

Point operator+(const Point& a, const Point& b) {
  return {a.x + b.x, a.y + b.y};
}

Point operator-(const Point& a, const Point& b) {
  return {a.x - b.x, a.y - b.y};
}

Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }

Rational Cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

Hull2D Hull2D::FromPoint(Point p) {
  Hull2D h;
  h.vertices.push_back(std::move(p));
  h.sources.push_back({0, 0});
  return h;
}

namespace {

// 0 for directions in (-90, 90] degrees, 1 for (90, 270].
int Half(const Point& d) {
  return (d.x.sign() > 0 || (d.x.is_zero() && d.y.sign() > 0)) ? 0 : 1;
}

bool AngleLess(const Point& a, const Point& b) {
  int ha = Half(a);
  int hb = Half(b);
  if (ha != hb) return ha < hb;
  return Cross(a, b).sign() > 0;
}

bool SameDirection(const Point& a, const Point& b) {
  return Half(a) == Half(b) && Cross(a, b).is_zero();
}

// Is p on the closed segment [a, b]?
bool OnSegment(const Point& a, const Point& b, const Point& p) {
  if (!Cross(b - a, p - a).is_zero()) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Coefficient t with p == a + t (b - a), for p on the segment, a != b.
Rational SegmentParam(const Point& a, const Point& b, const Point& p) {
  if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
  return (p.y - a.y) / (b.y - a.y);
}

std::vector<std::pair<std::size_t, std::size_t>> Edges(const Hull2D& h) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = h.size();
  if (n == 2) {
    out.push_back({0, 1});
  } else if (n > 2) {
    for (std::size_t i = 0; i < n; ++i) out.push_back({i, (i + 1) % n});
  }
  return out;
}

void RotateToLexMin(Hull2D& h) {
  auto it = std::min_element(h.vertices.begin(), h.vertices.end());
  std::size_t k = static_cast<std::size_t>(it - h.vertices.begin());
  std::rotate(h.vertices.begin(), h.vertices.begin() + k, h.vertices.end());
  std::rotate(h.sources.begin(), h.sources.begin() + k, h.sources.end());
}

}  // namespace

Hull2D HullMerge(const std::vector<const Hull2D*>& parts) {
  if (parts.empty()) throw GeometryError("hull merge of no hulls");
  // Each hull is two lexicographically sorted runs: the lower chain and the
  // reversed upper chain. Merge all runs, then one monotone-chain pass.
  struct Run {
    int part;
    std::vector<int> order;
    std::size_t pos = 0;
  };
  std::vector<Run> runs;
  std::size_t total = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const Hull2D& h = *parts[p];
    if (h.empty()) throw GeometryError("hull merge of an empty hull");
    total += h.size();
    int n = static_cast<int>(h.size());
    int top = static_cast<int>(
        std::max_element(h.vertices.begin(), h.vertices.end()) -
        h.vertices.begin());
    Run lower{static_cast<int>(p), {}};
    for (int i = 0; i <= top; ++i) lower.order.push_back(i);
    Run upper{static_cast<int>(p), {}};
    for (int i = n - 1; i > top; --i) upper.order.push_back(i);
    runs.push_back(std::move(lower));
    if (!upper.order.empty()) runs.push_back(std::move(upper));
  }
  struct Item {
    const Point* pt;
    int part;
    int vertex;
    std::size_t run;
  };
  auto later = [](const Item& a, const Item& b) {
    if (*a.pt != *b.pt) return *b.pt < *a.pt;
    return std::tie(b.part, b.vertex) < std::tie(a.part, a.vertex);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
  auto push = [&](std::size_t r) {
    Run& run = runs[r];
    if (run.pos == run.order.size()) return;
    int v = run.order[run.pos++];
    heap.push({&parts[run.part]->vertices[v], run.part, v, r});
  };
  for (std::size_t r = 0; r < runs.size(); ++r) push(r);
  std::vector<Item> sorted;
  sorted.reserve(total);
  while (!heap.empty()) {
    Item it = heap.top();
    heap.pop();
    if (sorted.empty() || *sorted.back().pt != *it.pt) sorted.push_back(it);
    push(it.run);
  }

  Hull2D out;
  auto emit = [&](const Item& it) {
    out.vertices.push_back(*it.pt);
    out.sources.push_back({it.part, it.vertex});
  };
  if (sorted.size() == 1) {
    emit(sorted[0]);
    return out;
  }
  auto turn = [](const Item& a, const Item& b, const Item& c) {
    return Cross(*b.pt - *a.pt, *c.pt - *a.pt).sign();
  };
  std::vector<Item> chain;
  for (const Item& it : sorted) {
    while (chain.size() >= 2 &&
           turn(chain[chain.size() - 2], chain.back(), it) <= 0) {
      chain.pop_back();
    }
    chain.push_back(it);
  }
  std::size_t lower_size = chain.size();
  for (std::size_t i = sorted.size() - 1; i-- > 0;) {
    const Item& it = sorted[i];
    while (chain.size() > lower_size &&
           turn(chain[chain.size() - 2], chain.back(), it) <= 0) {
      chain.pop_back();
    }
    chain.push_back(it);
  }
  chain.pop_back();  // lexicographic minimum again
  for (const Item& it : chain) emit(it);
  return out;
}

Hull2D HullMerge(const std::vector<Hull2D>& parts) {
  std::vector<const Hull2D*> ptrs;
  for (const Hull2D& h : parts) ptrs.push_back(&h);
  return HullMerge(ptrs);
}

std::optional<Hull2D> RestrictHalfspace(const Hull2D& h, const Rational& xmin) {
  if (h.empty()) return std::nullopt;
  const std::size_t n = h.size();
  if (n == 1) {
    if (h.vertices[0].x < xmin) return std::nullopt;
    Hull2D out = h;
    out.sources = {{0, 0}};
    return out;
  }
  Hull2D out;
  auto add = [&](const Point& p, Source s) {
    if (!out.vertices.empty() && out.vertices.back() == p) return;
    out.vertices.push_back(p);
    out.sources.push_back(s);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = h.vertices[i];
    const Point& q = h.vertices[(i + 1) % n];
    if (p.x >= xmin) add(p, {0, static_cast<int>(i)});
    bool crosses = (p.x < xmin && q.x > xmin) || (p.x > xmin && q.x < xmin);
    if (crosses) {
      Rational t = (xmin - p.x) / (q.x - p.x);
      add({xmin, p.y + t * (q.y - p.y)}, {kMixed, static_cast<int>(i)});
    }
  }
  while (out.vertices.size() > 1 && out.vertices.back() == out.vertices[0]) {
    out.vertices.pop_back();
    out.sources.pop_back();
  }
  if (out.vertices.empty()) return std::nullopt;
  RotateToLexMin(out);
  return out;
}

Hull2D MinkowskiWeighted(const std::vector<WeightedHull>& parts) {
  if (parts.empty()) throw GeometryError("Minkowski sum of no hulls");
  Rational total;
  for (const WeightedHull& p : parts) {
    if (p.weight.sign() <= 0) throw GeometryError("non-positive weight");
    if (p.hull->empty()) throw GeometryError("Minkowski sum of an empty hull");
    total += p.weight;
  }
  if (total != Rational(1)) {
    throw GeometryError("weights sum to " + total.ToString());
  }
  const std::size_t k = parts.size();
  std::vector<std::vector<Point>> edges(k);
  Point cur{0, 0};
  for (std::size_t j = 0; j < k; ++j) {
    const Hull2D& h = *parts[j].hull;
    cur = cur + parts[j].weight * h.vertices[0];
    if (h.size() < 2) continue;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Point& a = h.vertices[i];
      const Point& b = h.vertices[(i + 1) % h.size()];
      edges[j].push_back(parts[j].weight * (b - a));
    }
  }
  std::vector<int> idx(k, 0);
  Hull2D out;
  out.vertices.push_back(cur);
  out.sum_index.push_back(idx);
  while (true) {
    int best = -1;
    for (std::size_t j = 0; j < k; ++j) {
      if (static_cast<std::size_t>(idx[j]) == edges[j].size()) continue;
      if (best < 0 || AngleLess(edges[j][idx[j]], edges[best][idx[best]])) {
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;
    Point dir = edges[best][idx[best]];
    for (std::size_t j = 0; j < k; ++j) {
      if (static_cast<std::size_t>(idx[j]) == edges[j].size()) continue;
      if (SameDirection(edges[j][idx[j]], dir)) {
        cur = cur + edges[j][idx[j]];
        ++idx[j];
      }
    }
    std::vector<int> wrapped(k);
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t n = parts[j].hull->size();
      wrapped[j] = static_cast<int>(static_cast<std::size_t>(idx[j]) % n);
    }
    out.vertices.push_back(cur);
    out.sum_index.push_back(std::move(wrapped));
  }
  if (out.vertices.size() > 1) {
    out.vertices.pop_back();  // back at the start
    out.sum_index.pop_back();
  }
  out.sources.assign(out.vertices.size(), {kMixed, 0});
  for (std::size_t i = 0; i < out.sources.size(); ++i) {
    out.sources[i].vertex = static_cast<int>(i);
  }
  return out;
}

Decomposition Decompose(const Hull2D& h, const Point& target) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.vertices[i] == target) {
      return {target, h.sources[i].part, target, h.sources[i].part, 1};
    }
  }
  for (auto [i, j] : Edges(h)) {
    const Point& a = h.vertices[i];
    const Point& b = h.vertices[j];
    if (!OnSegment(a, b, target)) continue;
    int pa = h.sources[i].part;
    int pb = h.sources[j].part;
    if (pa == pb) return {target, pa, target, pa, 1};
    // target = alpha a + (1 - alpha) b, so alpha = 1 - t for t along a->b.
    Rational alpha = Rational(1) - SegmentParam(a, b, target);
    return {a, pa, b, pb, alpha};
  }
  throw GeometryError("decompose: " + ToString(target) +
                      " is not on the hull boundary");
}

std::vector<Point> DecomposeSum(const std::vector<WeightedHull>& parts,
                                const Hull2D& sum, const Point& target) {
  if (sum.sum_index.size() != sum.size()) {
    throw GeometryError("decompose_sum: hull carries no Minkowski provenance");
  }
  auto at = [&](std::size_t v) {
    std::vector<Point> out;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      out.push_back(parts[j].hull->vertices[sum.sum_index[v][j]]);
    }
    return out;
  };
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (sum.vertices[i] == target) return at(i);
  }
  for (auto [i, j] : Edges(sum)) {
    const Point& a = sum.vertices[i];
    const Point& b = sum.vertices[j];
    if (!OnSegment(a, b, target)) continue;
    Rational t = SegmentParam(a, b, target);
    std::vector<Point> from = at(i);
    std::vector<Point> to = at(j);
    for (std::size_t k = 0; k < from.size(); ++k) {
      from[k] = from[k] + t * (to[k] - from[k]);
    }
    return from;
  }
  throw GeometryError("decompose_sum: " + ToString(target) +
                      " is not on the hull boundary");
}

Point MaxYPoint(const Hull2D& h) {
  if (h.empty()) throw GeometryError("max_y of an empty hull");
  const Point* best = &h.vertices[0];
  for (const Point& p : h.vertices) {
    if (p.y > best->y || (p.y == best->y && p.x > best->x)) best = &p;
  }
  return *best;
}

Rational MinX(const Hull2D& h) {
  if (h.empty()) throw GeometryError("min_x of an empty hull");
  return h.vertices[0].x;
}

bool Contains(const Hull2D& h, const Point& p) {
  if (h.empty()) return false;
  if (h.size() == 1) return h.vertices[0] == p;
  if (h.size() == 2) return OnSegment(h.vertices[0], h.vertices[1], p);
  for (auto [i, j] : Edges(h)) {
    if (Cross(h.vertices[j] - h.vertices[i], p - h.vertices[i]).sign() < 0) {
      return false;
    }
  }
  return true;
}

bool OnBoundary(const Hull2D& h, const Point& p) {
  if (h.size() <= 2) return Contains(h, p);
  for (auto [i, j] : Edges(h)) {
    if (OnSegment(h.vertices[i], h.vertices[j], p)) return true;
  }
  return false;
}

std::string CanonicalError(const Hull2D& h) {
  if (h.empty()) return "empty";
  if (h.sources.size() != h.size()) return "sources/vertices size mismatch";
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (!(h.vertices[0] < h.vertices[i])) {
      return "vertex 0 is not the strict lexicographic minimum";
    }
  }
  if (h.size() == 2) return "";
  std::vector<Point> dirs;
  for (auto [i, j] : Edges(h)) dirs.push_back(h.vertices[j] - h.vertices[i]);
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    if (!AngleLess(dirs[i], dirs[i + 1])) {
      return "edge " + std::to_string(i) + " breaks counterclockwise order";
    }
  }
  return "";
}

}  // namespace stackel
