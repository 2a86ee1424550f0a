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

// Exact convex polygons in the (follower utility, leader utility) plane.

#ifndef STACKEL_GEOMETRY_H_
#define STACKEL_GEOMETRY_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackel/rational.h"

namespace stackel {

// x is the follower's utility, y the leader's.
struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

std::string ToString(const Point& p);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& p);
// z-component of a x b.
Rational Cross(const Point& a, const Point& b);

inline constexpr int kMixed = -1;

// Where a hull vertex came from: vertex `vertex` of input `part`. Cut points
// introduced by restriction have part == kMixed and vertex == the index of
// the input edge they lie on.
struct Source {
  int part = 0;
  int vertex = 0;
  friend bool operator==(const Source&, const Source&) = default;
};

// Extreme points in counterclockwise order starting at the lexicographically
// smallest one; no three consecutive vertices are collinear. One vertex is a
// point, two a segment.
struct Hull2D {
  std::vector<Point> vertices;
  std::vector<Source> sources;
  // Minkowski sums only: per output vertex, the vertex index in each part.
  std::vector<std::vector<int>> sum_index;

  static Hull2D FromPoint(Point p);
  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
};

class GeometryError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Convex hull of the union. Inputs must be canonical. Duplicate points keep
// the source with the lowest part index.
Hull2D HullMerge(const std::vector<const Hull2D*>& parts);
Hull2D HullMerge(const std::vector<Hull2D>& parts);

// h intersected with {x >= xmin}; nullopt when empty.
std::optional<Hull2D> RestrictHalfspace(const Hull2D& h, const Rational& xmin);

struct WeightedHull {
  const Hull2D* hull;
  Rational weight;
};

// { sum_i w_i p_i : p_i in hull_i }. Weights must be positive and sum to 1.
Hull2D MinkowskiWeighted(const std::vector<WeightedHull>& parts);

struct Decomposition {
  Point a;
  int part_a = 0;
  Point b;
  int part_b = 0;
  // target == alpha * a + (1 - alpha) * b.
  Rational alpha;
};

// Splits a boundary point of a merged hull into points of at most two input
// parts. A target on a vertex, or on an edge lying within a single part,
// comes back with part_a == part_b and alpha == 1. Throws GeometryError when
// target is not on the boundary.
Decomposition Decompose(const Hull2D& h, const Point& target);

// Splits a boundary point of MinkowskiWeighted(parts) into one point per
// part with sum_i w_i p_i == target exactly.
std::vector<Point> DecomposeSum(const std::vector<WeightedHull>& parts,
                                const Hull2D& sum, const Point& target);

// Largest y, ties towards larger x.
Point MaxYPoint(const Hull2D& h);
Rational MinX(const Hull2D& h);

// Exact membership test (boundary included).
bool Contains(const Hull2D& h, const Point& p);
bool OnBoundary(const Hull2D& h, const Point& p);

// Empty string if h satisfies the canonical-order invariant, else a reason.
std::string CanonicalError(const Hull2D& h);

}  // namespace stackel

#endif  // STACKEL_GEOMETRY_H_
