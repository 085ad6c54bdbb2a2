#include "sawq/lattice.hpp"

#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace sawq {

Point Point::shifted(int axis, Coord delta) const {
  Point q(*this);
  q.c[static_cast<size_t>(axis)] += delta;
  return q;
}

std::vector<Point> neighbors(const Point& p) {
  const int d = p.dimension();
  if (d < 1) throw std::invalid_argument("neighbors: dimension must be >= 1");
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(2 * d));
  for (int axis = 0; axis < d; ++axis) {
    out.push_back(p.shifted(axis, 1));
    out.push_back(p.shifted(axis, -1));
  }
  return out;
}

bool adjacent(const Point& u, const Point& v) {
  if (u.dimension() != v.dimension() || u.dimension() < 1) return false;
  int diff_axis = -1;
  for (int i = 0; i < u.dimension(); ++i) {
    if (u[i] == v[i]) continue;
    if (diff_axis >= 0) return false;
    if (std::abs(static_cast<long>(u[i]) - static_cast<long>(v[i])) != 1) return false;
    diff_axis = i;
  }
  return diff_axis >= 0;
}

Bond canonical_bond(const Point& u, const Point& v) {
  if (!adjacent(u, v)) throw std::invalid_argument("canonical_bond: endpoints are not adjacent");
  Bond b;
  if (u < v) {
    b.base = u;
  } else {
    b.base = v;
  }
  for (int i = 0; i < u.dimension(); ++i) {
    if (u[i] != v[i]) {
      b.axis = i;
      break;
    }
  }
  return b;
}

namespace {
struct PointHash {
  size_t operator()(const Point& p) const {
    size_t h = 0x9e3779b97f4a7c15ULL ^ p.c.size();
    for (Coord v : p.c) h = (h ^ static_cast<size_t>(static_cast<uint32_t>(v))) * 0x100000001b3ULL;
    return h;
  }
};
}  // namespace

bool is_self_avoiding(std::span<const Point> vertices) {
  if (vertices.empty()) throw std::invalid_argument("is_self_avoiding: empty vertex list");
  const int d = vertices[0].dimension();
  if (d < 1) throw std::invalid_argument("is_self_avoiding: dimension must be >= 1");
  for (const Point& p : vertices)
    if (p.dimension() != d) throw std::invalid_argument("is_self_avoiding: dimension mismatch");
  for (size_t j = 1; j < vertices.size(); ++j)
    if (!adjacent(vertices[j - 1], vertices[j])) return false;
  std::unordered_set<Point, PointHash> seen;
  seen.reserve(vertices.size() * 2);
  for (const Point& p : vertices)
    if (!seen.insert(p).second) return false;
  return true;
}

Walk::Walk(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (!is_self_avoiding(vertices_)) throw std::invalid_argument("Walk: vertices are not a self-avoiding path");
}

std::vector<Bond> Walk::bonds() const {
  std::vector<Bond> out;
  out.reserve(vertices_.size() > 0 ? vertices_.size() - 1 : 0);
  for (size_t j = 1; j < vertices_.size(); ++j)
    out.push_back(canonical_bond(vertices_[j - 1], vertices_[j]));
  return out;
}

}  // namespace sawq
