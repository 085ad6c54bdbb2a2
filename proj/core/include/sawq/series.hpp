#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sawq {

// Per-length observable values, indexed by walk length n = 0..n_max.
// values[0] always corresponds to the empty walk.
template <class T>
struct SeriesByLength {
  std::vector<T> values;

  SeriesByLength() = default;
  explicit SeriesByLength(int n_max) : values(static_cast<size_t>(n_max) + 1, T{}) {}

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  T& operator[](int n) { return values[static_cast<size_t>(n)]; }
  const T& operator[](int n) const { return values[static_cast<size_t>(n)]; }
};

using CountSeries = SeriesByLength<uint64_t>;
using RealSeries = SeriesByLength<double>;

// "n,value" rows, one per length.
std::string to_csv(const CountSeries& s);
std::string to_csv(const RealSeries& s);

}  // namespace sawq
