#pragma once

#include <cstdint>
#include <span>

#include "sawq/distribution.hpp"
#include "sawq/lattice.hpp"

namespace sawq {

// Infinite i.i.d. conductance field over the bonds of Z^d, evaluated lazily:
// X_b = Q(dist, M(seed, encode(b))), where M is the fixed avalanche chain
// from mixing.hpp and Q the distribution's quantile transform. One bond
// consumes exactly one stream word, so every value is a pure function of
// (seed, canonical bond): reproducible across runs, workers and query order,
// with O(1) memory for the whole field. Both orientations of an edge map to
// the same canonical bond and therefore the same value.
class Environment {
 public:
  Environment(DistributionSpec dist, uint64_t seed, int dimension);

  double conductance(const Bond& b) const;
  // Hot-path variant taking the canonical base coordinates directly.
  double conductance_at(std::span<const Coord> base, int axis) const;
  // The mixed stream word feeding the quantile transform (pinned by the
  // golden vectors in data/golden).
  uint64_t bond_word(std::span<const Coord> base, int axis) const;

  const DistributionSpec& dist() const { return dist_; }
  uint64_t seed() const { return seed_; }
  int dimension() const { return dimension_; }

 private:
  DistributionSpec dist_;
  uint64_t seed_;
  int dimension_;
  uint64_t root_;
};

}  // namespace sawq
