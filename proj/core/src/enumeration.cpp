#include "sawq/enumeration.hpp"

#include <limits>

namespace sawq {

namespace {
// Boxes beyond this many cells switch to hashed occupancy (the bitmap would
// exceed 32 MiB).
constexpr int64_t kDenseCellLimit = int64_t{1} << 28;
}  // namespace

uint64_t walk_visit_bound(int dimension, int n_max) {
  if (n_max <= 0) return 0;
  const unsigned __int128 cap = std::numeric_limits<uint64_t>::max();
  unsigned __int128 total = 0;
  unsigned __int128 term = static_cast<unsigned __int128>(2) * static_cast<unsigned>(dimension);
  for (int n = 1; n <= n_max; ++n) {
    total += term;
    if (total > cap) return std::numeric_limits<uint64_t>::max();
    term *= static_cast<unsigned>(2 * dimension - 1);
  }
  return static_cast<uint64_t>(total);
}

FoldGeometry::FoldGeometry(const Point& origin, int n_max)
    : origin_(origin), dimension_(origin.dimension()), n_max_(n_max) {
  if (dimension_ < 1) throw std::invalid_argument("FoldGeometry: dimension must be >= 1");
  if (n_max_ < 0) throw std::invalid_argument("FoldGeometry: n_max must be >= 0");
  lo_.resize(static_cast<size_t>(dimension_));
  for (int i = 0; i < dimension_; ++i) lo_[static_cast<size_t>(i)] = origin[i] - static_cast<Coord>(n_max_);
  const int64_t side = 2 * static_cast<int64_t>(n_max_) + 1;
  unsigned __int128 cells = 1;
  for (int i = 0; i < dimension_; ++i) {
    cells *= static_cast<unsigned __int128>(side);
    if (cells > static_cast<unsigned __int128>(kDenseCellLimit)) {
      dense_ = false;
      break;
    }
  }
  if (dense_) {
    cells_ = static_cast<int64_t>(cells);
    strides_.resize(static_cast<size_t>(dimension_));
    int64_t s = 1;
    for (int i = 0; i < dimension_; ++i) {
      strides_[static_cast<size_t>(i)] = s;
      s *= side;
    }
  } else {
    cells_ = -1;
  }
}

namespace {

// Visitors never see the empty walk; operations add its contribution to the
// n = 0 slot themselves.
struct CountingVisitor {
  CountSeries counts;

  void begin(const FoldGeometry& g) { counts = CountSeries(g.n_max()); }
  void extend(const StepInfo& s) {
    if (s.record) counts[s.length] += 1;
  }
  void retract() {}
  CountingVisitor fork() const { return CountingVisitor{}; }
  void join(CountingVisitor&& other) {
    for (int n = 0; n <= counts.n_max(); ++n) counts[n] += other.counts[n];
  }
};

}  // namespace

CountSeries count_walks(int dimension, int n_max, int split_depth, int workers) {
  EnumerationConfig cfg;
  cfg.dimension = dimension;
  cfg.n_max = n_max;
  cfg.split_depth = split_depth;
  cfg.workers = workers;
  CountingVisitor v;
  fold_walks(cfg, Point::origin(dimension), v);
  v.counts[0] = 1;  // the empty walk
  return std::move(v.counts);
}

}  // namespace sawq
