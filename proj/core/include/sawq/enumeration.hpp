#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sawq/lattice.hpp"
#include "sawq/parallel.hpp"
#include "sawq/series.hpp"

namespace sawq {

struct EnumerationConfig {
  int dimension = 1;
  int n_max = 0;
  int split_depth = 0;  // prefix depth enumerated serially; each prefix subtree is one task
  int workers = 1;      // <= 0: all hardware threads
};

// Upper bound on the number of walks visited by one fold,
// sum over n of 2d(2d-1)^(n-1), saturating at uint64 max. Budget guards use
// it before any enumeration starts.
uint64_t walk_visit_bound(int dimension, int n_max);

// Geometry shared by one fold: the L-inf box of radius n_max around the
// origin, which no walk of length <= n_max can leave. Small boxes get dense
// cell indices (bitmap occupancy, array-addressed endpoint slots); oversized
// boxes fall back to hashed containers and cell indices are absent.
class FoldGeometry {
 public:
  FoldGeometry(const Point& origin, int n_max);

  int dimension() const { return dimension_; }
  int n_max() const { return n_max_; }
  const Point& origin() const { return origin_; }
  bool dense() const { return dense_; }
  int64_t cells() const { return cells_; }
  int64_t stride(int axis) const { return strides_[static_cast<size_t>(axis)]; }

  int64_t cell_index(std::span<const Coord> p) const {
    int64_t idx = 0;
    for (int i = 0; i < dimension_; ++i)
      idx += static_cast<int64_t>(p[static_cast<size_t>(i)] - lo_[static_cast<size_t>(i)]) *
             strides_[static_cast<size_t>(i)];
    return idx;
  }

  bool contains(std::span<const Coord> p) const {
    for (int i = 0; i < dimension_; ++i) {
      const int64_t off = static_cast<int64_t>(p[static_cast<size_t>(i)]) - origin_[i];
      if (off < -n_max_ || off > n_max_) return false;
    }
    return true;
  }

 private:
  Point origin_;
  std::vector<Coord> lo_;
  std::vector<int64_t> strides_;
  int64_t cells_ = 1;
  int dimension_ = 1;
  int n_max_ = 0;
  bool dense_ = true;
};

// One walk extension. Spans point into driver-owned stacks and are only valid
// during the call.
struct StepInfo {
  int length;                        // |walk| after this extension
  std::span<const Coord> head;       // endpoint after the step
  std::span<const Coord> bond_base;  // canonical base of the step bond
  int bond_axis;
  int64_t head_cell;                 // dense cell of head, -1 in sparse mode
  bool record;                       // false while replaying a prefix into a forked visitor
};

// Visitors fold an observable over the walk tree. extend/retract maintain
// incremental per-step state in O(1); contributions are tallied only when
// StepInfo::record is set. fork() produces an empty-state sibling for a
// parallel subtree and join() merges one back. Joins must be exact
// (integer or Superaccumulator state), which is what keeps results
// bit-identical across split_depth and worker counts.
template <class V>
concept WalkVisitor = requires(V v, V w, const V cv, const FoldGeometry& g, const StepInfo& s) {
  v.begin(g);
  v.extend(s);
  v.retract();
  { cv.fork() } -> std::convertible_to<V>;
  v.join(std::move(w));
};

namespace detail {

struct CoordsVecHash {
  size_t operator()(const std::vector<Coord>& v) const {
    size_t h = 0xcbf29ce484222325ULL;
    for (Coord c : v) h = (h ^ static_cast<uint32_t>(c)) * 0x100000001b3ULL;
    return h;
  }
};

// DFS cursor over self-avoiding extensions: vertex stack, occupancy, and the
// direction stack used to snapshot and replay prefixes.
class FoldCursor {
 public:
  FoldCursor(const FoldGeometry& g, const Point& origin)
      : g_(&g),
        d_(g.dimension()),
        coords_(static_cast<size_t>(g.n_max() + 1) * static_cast<size_t>(g.dimension())),
        cells_(static_cast<size_t>(g.n_max() + 1), 0),
        dirs_(static_cast<size_t>(std::max(g.n_max(), 1)), 0),
        depth_(0) {
    std::copy(origin.c.begin(), origin.c.end(), coords_.begin());
    if (g_->dense()) {
      bits_.assign(static_cast<size_t>((g.cells() + 63) / 64), 0);
      cells_[0] = g_->cell_index(head());
      set_bit(cells_[0]);
    } else {
      sparse_.reserve(1024);
      sparse_.insert(origin.c);
    }
  }

  int depth() const { return depth_; }
  std::span<const Coord> head() const {
    return {coords_.data() + static_cast<size_t>(depth_) * static_cast<size_t>(d_),
            static_cast<size_t>(d_)};
  }
  std::span<const uint8_t> dirs() const { return {dirs_.data(), static_cast<size_t>(depth_)}; }

  // Attempts the extension; fills `info` and returns true when the target
  // vertex was free. dir encodes +e_axis / -e_axis as 2*axis / 2*axis+1.
  bool try_push(int dir, bool record, StepInfo& info) {
    const int axis = dir >> 1;
    const Coord delta = (dir & 1) ? -1 : 1;
    const Coord* cur = coords_.data() + static_cast<size_t>(depth_) * static_cast<size_t>(d_);
    Coord* nxt = coords_.data() + static_cast<size_t>(depth_ + 1) * static_cast<size_t>(d_);
    std::copy(cur, cur + d_, nxt);
    nxt[axis] += delta;
    if (g_->dense()) {
      const int64_t cell = cells_[static_cast<size_t>(depth_)] + delta * g_->stride(axis);
      if (test_bit(cell)) return false;
      set_bit(cell);
      cells_[static_cast<size_t>(depth_ + 1)] = cell;
      info.head_cell = cell;
    } else {
      scratch_.assign(nxt, nxt + d_);
      if (!sparse_.insert(scratch_).second) return false;
      info.head_cell = -1;
    }
    dirs_[static_cast<size_t>(depth_)] = static_cast<uint8_t>(dir);
    ++depth_;
    info.length = depth_;
    info.head = {nxt, static_cast<size_t>(d_)};
    info.bond_base = {delta > 0 ? cur : nxt, static_cast<size_t>(d_)};
    info.bond_axis = axis;
    info.record = record;
    return true;
  }

  void pop() {
    const Coord* top = coords_.data() + static_cast<size_t>(depth_) * static_cast<size_t>(d_);
    if (g_->dense()) {
      clear_bit(cells_[static_cast<size_t>(depth_)]);
    } else {
      scratch_.assign(top, top + d_);
      sparse_.erase(scratch_);
    }
    --depth_;
  }

 private:
  bool test_bit(int64_t i) const { return (bits_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u; }
  void set_bit(int64_t i) { bits_[static_cast<size_t>(i >> 6)] |= uint64_t{1} << (i & 63); }
  void clear_bit(int64_t i) { bits_[static_cast<size_t>(i >> 6)] &= ~(uint64_t{1} << (i & 63)); }

  const FoldGeometry* g_;
  int d_;
  std::vector<Coord> coords_;
  std::vector<int64_t> cells_;
  std::vector<uint64_t> bits_;
  std::unordered_set<std::vector<Coord>, CoordsVecHash> sparse_;
  std::vector<Coord> scratch_;
  std::vector<uint8_t> dirs_;
  int depth_;
};

// Enumerates all extensions of the cursor's current walk up to length
// `limit`, recording every visited walk. When `collect` is given, walks of
// length collect_at have their direction prefix snapshotted and are not
// extended further here.
template <class V>
void dfs(FoldCursor& cur, V& visitor, int dims2, int limit,
         std::vector<std::vector<uint8_t>>* collect, int collect_at) {
  StepInfo info;
  for (int dir = 0; dir < dims2; ++dir) {
    if (!cur.try_push(dir, true, info)) continue;
    visitor.extend(info);
    if (cur.depth() == collect_at && collect) {
      auto d = cur.dirs();
      collect->emplace_back(d.begin(), d.end());
    } else if (cur.depth() < limit) {
      dfs(cur, visitor, dims2, limit, collect, collect_at);
    }
    visitor.retract();
    cur.pop();
  }
}

}  // namespace detail

// Visits every self-avoiding walk from `origin` with 1 <= |walk| <= n_max
// exactly once, in depth-first extension order (+e0, -e0, +e1, ...).
// With split_depth > 0 and more than one worker, prefixes of that depth are
// enumerated serially and their subtrees processed as independent tasks on
// forked visitors, joined in worker order; visitor joins being exact makes
// the result identical to the serial order for any split.
template <WalkVisitor V>
void fold_walks(const EnumerationConfig& cfg, const Point& origin, V& visitor) {
  if (origin.dimension() != cfg.dimension)
    throw std::invalid_argument("fold_walks: origin dimension does not match config");
  if (cfg.dimension < 1) throw std::invalid_argument("fold_walks: dimension must be >= 1");
  if (cfg.n_max < 0) throw std::invalid_argument("fold_walks: n_max must be >= 0");
  if (cfg.split_depth < 0 || cfg.split_depth > cfg.n_max)
    throw std::invalid_argument("fold_walks: split_depth must lie in [0, n_max]");

  FoldGeometry geom(origin, cfg.n_max);
  visitor.begin(geom);
  if (cfg.n_max == 0) return;

  const int dims2 = 2 * cfg.dimension;
  const int workers = resolve_workers(cfg.workers);

  if (cfg.split_depth == 0 || workers <= 1) {
    detail::FoldCursor cur(geom, origin);
    detail::dfs(cur, visitor, dims2, cfg.n_max, nullptr, -1);
    return;
  }

  // serial phase: all walks up to split_depth, snapshotting the prefixes
  std::vector<std::vector<uint8_t>> prefixes;
  {
    detail::FoldCursor cur(geom, origin);
    detail::dfs(cur, visitor, dims2, cfg.split_depth, &prefixes, cfg.split_depth);
  }
  if (prefixes.empty() || cfg.split_depth == cfg.n_max) return;

  const uint64_t n_tasks = prefixes.size();
  const uint64_t n_workers = std::min<uint64_t>(static_cast<uint64_t>(workers), n_tasks);
  std::vector<V> states;
  states.reserve(n_workers);
  for (uint64_t w = 0; w < n_workers; ++w) states.push_back(visitor.fork());

  std::atomic<uint64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker_body = [&](uint64_t w) {
    try {
      V& local = states[static_cast<size_t>(w)];
      local.begin(geom);
      detail::FoldCursor cur(geom, origin);
      StepInfo info;
      for (;;) {
        const uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n_tasks) return;
        const auto& prefix = prefixes[static_cast<size_t>(i)];
        for (uint8_t dir : prefix) {
          if (!cur.try_push(dir, false, info))
            throw std::logic_error("fold_walks: prefix replay failed");
          local.extend(info);
        }
        detail::dfs(cur, local, dims2, cfg.n_max, nullptr, -1);
        for (size_t k = 0; k < prefix.size(); ++k) {
          local.retract();
          cur.pop();
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (n_workers == 1) {
    worker_body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (uint64_t w = 0; w < n_workers; ++w) pool.emplace_back(worker_body, w);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  for (auto& s : states) visitor.join(std::move(s));
}

// Exact c(n) for n = 0..n_max, independent of the reference point.
CountSeries count_walks(int dimension, int n_max, int split_depth = 0, int workers = 1);

}  // namespace sawq
