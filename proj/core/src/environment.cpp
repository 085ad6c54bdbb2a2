#include "sawq/environment.hpp"

#include <stdexcept>

#include "sawq/mixing.hpp"

namespace sawq {

namespace {
// domain tag separating bond streams from other consumers of the same seed
constexpr uint64_t kBondDomain = 0x8f3a81bd0c76a5e1ULL;
}  // namespace

Environment::Environment(DistributionSpec dist, uint64_t seed, int dimension)
    : dist_(dist), seed_(seed), dimension_(dimension), root_(mix_combine(seed, kBondDomain)) {
  if (dimension < 1) throw std::invalid_argument("Environment: dimension must be >= 1");
}

uint64_t Environment::bond_word(std::span<const Coord> base, int axis) const {
  uint64_t h = root_;
  for (Coord c : base) h = mix_combine(h, static_cast<uint64_t>(static_cast<int64_t>(c)));
  h = mix_combine(h, static_cast<uint64_t>(axis));
  return h;
}

double Environment::conductance_at(std::span<const Coord> base, int axis) const {
  return dist_.sample(bond_word(base, axis));
}

double Environment::conductance(const Bond& b) const {
  if (b.base.dimension() != dimension_)
    throw std::invalid_argument("Environment::conductance: dimension mismatch");
  if (b.axis < 0 || b.axis >= dimension_)
    throw std::invalid_argument("Environment::conductance: axis out of range");
  return conductance_at(std::span<const Coord>(b.base.c), b.axis);
}

}  // namespace sawq
