#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sawq {

using Coord = int32_t;

// A point of the d-dimensional integer lattice. All points taking part in one
// computation share the same dimension.
struct Point {
  std::vector<Coord> c;

  Point() = default;
  explicit Point(std::vector<Coord> coords) : c(std::move(coords)) {}
  static Point origin(int dimension) { return Point(std::vector<Coord>(static_cast<size_t>(dimension), 0)); }

  int dimension() const { return static_cast<int>(c.size()); }
  Coord operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Point shifted(int axis, Coord delta) const;

  bool operator==(const Point&) const = default;
  auto operator<=>(const Point&) const = default;  // lexicographic
};

// Undirected nearest-neighbor bond in canonical form: `base` is the
// lexicographically smaller endpoint, the other endpoint is base + e_axis.
// Constructing from (u,v) and (v,u) yields the identical value, which is what
// lets a conductance field satisfy X_{(u,v)} = X_{(v,u)} by construction.
struct Bond {
  Point base;
  int axis = 0;

  Point other() const { return base.shifted(axis, 1); }
  bool operator==(const Bond&) const = default;
};

// L1 distance 1 neighbors in the fixed order +e0, -e0, +e1, -e1, ...
std::vector<Point> neighbors(const Point& p);

bool adjacent(const Point& u, const Point& v);

// Throws std::invalid_argument unless u and v are adjacent (this includes any
// dimension mismatch).
Bond canonical_bond(const Point& u, const Point& v);

// True iff consecutive vertices are unit steps apart and all vertices are
// pairwise distinct. Throws std::invalid_argument for an empty list or mixed
// dimensions.
bool is_self_avoiding(std::span<const Point> vertices);

// A validated self-avoiding nearest-neighbor path.
class Walk {
 public:
  explicit Walk(std::vector<Point> vertices);  // throws if not self-avoiding

  int length() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<Point>& vertices() const { return vertices_; }
  // b_j = (w_{j-1}, w_j) in canonical form, j = 1..length
  std::vector<Bond> bonds() const;

 private:
  std::vector<Point> vertices_;
};

}  // namespace sawq
