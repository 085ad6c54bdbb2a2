#include "sawq/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace sawq {

namespace {

constexpr uint32_t kNoSlot = 0xffffffffu;

// The one expression both the susceptibility and the two-point field use for
// the beta == 0 per-length weight; sharing it keeps their endpoint partition
// exact to the bit.
inline double length_weight(double h, int n) { return std::exp(-h * static_cast<double>(n)); }

// Per-length weighted counts with step log-weight -h - beta*X. For beta == 0
// the weight only depends on the length, so integer counts are kept and the
// weight is applied exactly at read-out. The running exponent is restored
// from a saved stack on retract, so the value seen at a walk depends only on
// the path to it, never on traversal history; that keeps results identical
// across work splits.
class LengthWeightVisitor {
 public:
  LengthWeightVisitor(const Environment* env, double beta, double h)
      : env_(env), beta_(beta), h_(h) {}

  void begin(const FoldGeometry& g) {
    n_max_ = g.n_max();
    depth_ = 0;
    log_weight_ = 0.0;
    saved_.assign(static_cast<size_t>(n_max_) + 1, 0.0);
    if (beta_ == 0.0) {
      counts_.assign(static_cast<size_t>(n_max_) + 1, 0);
    } else {
      acc_.assign(static_cast<size_t>(n_max_) + 1, Superaccumulator{});
    }
  }

  void extend(const StepInfo& s) {
    ++depth_;
    if (beta_ == 0.0) {
      if (s.record) counts_[static_cast<size_t>(s.length)] += 1;
      return;
    }
    saved_[static_cast<size_t>(depth_)] = log_weight_;
    const double x = env_->conductance_at(s.bond_base, s.bond_axis);
    log_weight_ += -h_ - beta_ * x;
    if (s.record) acc_[static_cast<size_t>(s.length)].add_exp(log_weight_);
  }

  void retract() {
    if (beta_ != 0.0) log_weight_ = saved_[static_cast<size_t>(depth_)];
    --depth_;
  }

  LengthWeightVisitor fork() const { return LengthWeightVisitor(env_, beta_, h_); }

  void join(LengthWeightVisitor&& other) {
    if (beta_ == 0.0) {
      for (size_t n = 0; n < counts_.size(); ++n) counts_[n] += other.counts_[n];
    } else {
      for (size_t n = 0; n < acc_.size(); ++n) acc_[n].merge(other.acc_[n]);
    }
  }

  // Exact per-length accumulators (excluding the empty walk).
  std::vector<Superaccumulator> settle() const {
    std::vector<Superaccumulator> out(static_cast<size_t>(n_max_) + 1);
    if (beta_ == 0.0) {
      for (int n = 1; n <= n_max_; ++n)
        out[static_cast<size_t>(n)].add_product(length_weight(h_, n), counts_[static_cast<size_t>(n)]);
    } else {
      out = acc_;
    }
    return out;
  }

 private:
  const Environment* env_;
  double beta_;
  double h_;
  int n_max_ = 0;
  int depth_ = 0;
  double log_weight_ = 0.0;
  std::vector<double> saved_;
  std::vector<uint64_t> counts_;
  std::vector<Superaccumulator> acc_;
};

// Endpoint-resolved weights: same step weights as LengthWeightVisitor, binned
// by walk endpoint instead of (only) length.
class EndpointVisitor {
 public:
  EndpointVisitor(const Environment* env, double beta, double h) : env_(env), beta_(beta), h_(h) {}

  void begin(const FoldGeometry& g) {
    geom_ = &g;
    n_max_ = g.n_max();
    depth_ = 0;
    log_weight_ = 0.0;
    saved_.assign(static_cast<size_t>(n_max_) + 1, 0.0);
    points_.clear();
    cnt_.clear();
    acc_.clear();
    if (g.dense()) {
      slot_of_cell_.assign(static_cast<size_t>(g.cells()), kNoSlot);
    } else {
      slot_of_point_.clear();
    }
  }

  void extend(const StepInfo& s) {
    ++depth_;
    double x = 0.0;
    if (beta_ != 0.0) {
      saved_[static_cast<size_t>(depth_)] = log_weight_;
      x = env_->conductance_at(s.bond_base, s.bond_axis);
      log_weight_ += -h_ - beta_ * x;
    }
    if (!s.record) return;
    const uint32_t slot = slot_for(s);
    if (beta_ == 0.0) {
      cnt_[slot][static_cast<size_t>(s.length)] += 1;
    } else {
      acc_[slot].add_exp(log_weight_);
    }
  }

  void retract() {
    if (beta_ != 0.0) log_weight_ = saved_[static_cast<size_t>(depth_)];
    --depth_;
  }

  EndpointVisitor fork() const { return EndpointVisitor(env_, beta_, h_); }

  void join(EndpointVisitor&& other) {
    for (uint32_t os = 0; os < other.points_.size(); ++os) {
      const uint32_t slot = slot_for_point(other.points_[os], other.cells_[os]);
      if (beta_ == 0.0) {
        auto& mine = cnt_[slot];
        const auto& theirs = other.cnt_[os];
        for (size_t n = 0; n < mine.size(); ++n) mine[n] += theirs[n];
      } else {
        acc_[slot].merge(other.acc_[os]);
      }
    }
  }

  // Sorted (endpoint, exact accumulator) pairs, excluding the empty walk.
  std::vector<std::pair<Point, Superaccumulator>> settle() const {
    std::vector<uint32_t> order(points_.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return points_[a] < points_[b]; });
    std::vector<std::pair<Point, Superaccumulator>> out;
    out.reserve(order.size());
    for (uint32_t i : order) {
      Superaccumulator a;
      if (beta_ == 0.0) {
        for (int n = 1; n <= n_max_; ++n)
          a.add_product(length_weight(h_, n), cnt_[i][static_cast<size_t>(n)]);
      } else {
        a = acc_[i];
      }
      out.emplace_back(points_[i], std::move(a));
    }
    return out;
  }

 private:
  uint32_t slot_for(const StepInfo& s) {
    if (geom_->dense()) {
      uint32_t& slot = slot_of_cell_[static_cast<size_t>(s.head_cell)];
      if (slot == kNoSlot) slot = new_slot(Point(std::vector<Coord>(s.head.begin(), s.head.end())), s.head_cell);
      return slot;
    }
    Point p(std::vector<Coord>(s.head.begin(), s.head.end()));
    auto it = slot_of_point_.find(p);
    if (it != slot_of_point_.end()) return it->second;
    const uint32_t slot = new_slot(p, -1);
    slot_of_point_.emplace(std::move(p), slot);
    return slot;
  }

  uint32_t slot_for_point(const Point& p, int64_t cell) {
    if (geom_->dense()) {
      uint32_t& slot = slot_of_cell_[static_cast<size_t>(cell)];
      if (slot == kNoSlot) slot = new_slot(p, cell);
      return slot;
    }
    auto it = slot_of_point_.find(p);
    if (it != slot_of_point_.end()) return it->second;
    const uint32_t slot = new_slot(p, -1);
    slot_of_point_.emplace(p, slot);
    return slot;
  }

  uint32_t new_slot(Point p, int64_t cell) {
    const uint32_t slot = static_cast<uint32_t>(points_.size());
    points_.push_back(std::move(p));
    cells_.push_back(cell);
    if (beta_ == 0.0) {
      cnt_.emplace_back(static_cast<size_t>(n_max_) + 1, 0);
    } else {
      acc_.emplace_back();
    }
    return slot;
  }

  struct PointHash {
    size_t operator()(const Point& p) const {
      size_t h = 0xcbf29ce484222325ULL;
      for (Coord c : p.c) h = (h ^ static_cast<uint32_t>(c)) * 0x100000001b3ULL;
      return h;
    }
  };

  const Environment* env_;
  double beta_;
  double h_;
  const FoldGeometry* geom_ = nullptr;
  int n_max_ = 0;
  int depth_ = 0;
  double log_weight_ = 0.0;
  std::vector<double> saved_;
  std::vector<uint32_t> slot_of_cell_;
  std::unordered_map<Point, uint32_t, PointHash> slot_of_point_;
  std::vector<Point> points_;
  std::vector<int64_t> cells_;
  std::vector<std::vector<uint64_t>> cnt_;
  std::vector<Superaccumulator> acc_;
};

// Tallies walks whose average centered conductance lies in (-delta, delta).
class GoodWalkVisitor {
 public:
  GoodWalkVisitor(const Environment* env, double delta)
      : env_(env), delta_(delta), mean_(env->dist().mean()) {}

  void begin(const FoldGeometry& g) {
    depth_ = 0;
    centered_sum_ = 0.0;
    saved_.assign(static_cast<size_t>(g.n_max()) + 1, 0.0);
    good_ = CountSeries(g.n_max());
    total_ = CountSeries(g.n_max());
  }

  void extend(const StepInfo& s) {
    ++depth_;
    saved_[static_cast<size_t>(depth_)] = centered_sum_;
    centered_sum_ += env_->conductance_at(s.bond_base, s.bond_axis) - mean_;
    if (!s.record) return;
    total_[s.length] += 1;
    if (std::fabs(centered_sum_ / static_cast<double>(s.length)) < delta_) good_[s.length] += 1;
  }

  void retract() {
    centered_sum_ = saved_[static_cast<size_t>(depth_)];
    --depth_;
  }

  GoodWalkVisitor fork() const { return GoodWalkVisitor(env_, delta_); }

  void join(GoodWalkVisitor&& other) {
    for (int n = 0; n <= good_.n_max(); ++n) {
      good_[n] += other.good_[n];
      total_[n] += other.total_[n];
    }
  }

  CountSeries good_, total_;

 private:
  const Environment* env_;
  double delta_;
  double mean_;
  int depth_ = 0;
  double centered_sum_ = 0.0;
  std::vector<double> saved_;
};

void check_env(const Environment& env, const EnumerationConfig& cfg, double beta) {
  if (env.dimension() != cfg.dimension)
    throw std::invalid_argument("environment dimension does not match enumeration config");
  if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
}

}  // namespace

QuenchedSeries quenched_counts(const Environment& env, double beta, const Point& x,
                               const EnumerationConfig& cfg) {
  check_env(env, cfg, beta);
  LengthWeightVisitor v(&env, beta, 0.0);
  fold_walks(cfg, x, v);
  auto per_len = v.settle();

  QuenchedSeries out;
  out.origin = x;
  out.beta = beta;
  out.counts = RealSeries(cfg.n_max);
  out.log_counts.assign(static_cast<size_t>(cfg.n_max) + 1, 0.0);
  out.counts[0] = 1.0;
  out.log_counts[0] = 0.0;
  for (int n = 1; n <= cfg.n_max; ++n) {
    out.counts[n] = per_len[static_cast<size_t>(n)].to_double();
    out.log_counts[static_cast<size_t>(n)] = per_len[static_cast<size_t>(n)].log_abs();
  }
  return out;
}

TruncatedSusceptibility quenched_susceptibility(const Environment& env, double h, double beta,
                                                const Point& x, const EnumerationConfig& cfg) {
  check_env(env, cfg, beta);
  LengthWeightVisitor v(&env, beta, h);
  fold_walks(cfg, x, v);
  auto per_len = v.settle();

  Superaccumulator total;
  total.add(1.0);  // the empty walk
  for (int n = 1; n <= cfg.n_max; ++n) total.merge(per_len[static_cast<size_t>(n)]);

  TruncatedSusceptibility out;
  out.n_max = cfg.n_max;
  out.partial_sum = total.to_double();
  out.log_partial_sum = total.log_abs();
  const double log_tail =
      cfg.n_max == 0 ? 0.0 : per_len[static_cast<size_t>(cfg.n_max)].log_abs();
  out.tail_ratio = std::exp(log_tail - out.log_partial_sum);
  return out;
}

TwoPointField two_point_field(const Environment& env, double h, double beta, const Point& x,
                              const EnumerationConfig& cfg) {
  check_env(env, cfg, beta);
  EndpointVisitor v(&env, beta, h);
  fold_walks(cfg, x, v);
  auto settled = v.settle();

  // the empty walk sits on the source endpoint
  bool source_present = false;
  for (auto& [p, a] : settled) {
    if (p == x) {
      a.add(1.0);
      source_present = true;
      break;
    }
  }

  TwoPointField out;
  out.values.reserve(settled.size() + 1);
  Superaccumulator total;
  if (!source_present) {
    Superaccumulator self;
    self.add(1.0);
    settled.emplace_back(x, std::move(self));
    std::sort(settled.begin(), settled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  for (const auto& [p, a] : settled) {
    out.values.emplace_back(p, a.to_double());
    total.merge(a);
  }
  out.total = total.to_double();
  return out;
}

double two_point(const Environment& env, double h, double beta, const Point& x, const Point& y,
                 const EnumerationConfig& cfg) {
  if (y.dimension() != x.dimension())
    throw std::invalid_argument("two_point: endpoint dimensions differ");
  TwoPointField field = two_point_field(env, h, beta, x, cfg);
  auto it = std::lower_bound(field.values.begin(), field.values.end(), y,
                             [](const auto& kv, const Point& p) { return kv.first < p; });
  if (it != field.values.end() && it->first == y) return it->second;
  return 0.0;
}

GoodWalkStats good_walk_counts(const Environment& env, const Point& x, double delta,
                               const EnumerationConfig& cfg) {
  check_env(env, cfg, 0.0);
  if (!(delta > 0.0)) throw std::domain_error("good_walk_counts: delta must be > 0");
  GoodWalkVisitor v(&env, delta);
  fold_walks(cfg, x, v);
  GoodWalkStats out;
  out.good = std::move(v.good_);
  out.total = std::move(v.total_);
  out.delta = delta;
  return out;
}

RealSeries annealed_counts(const DistributionSpec& dist, double beta, int dimension,
                           const EnumerationConfig& cfg) {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
  CountSeries c = count_walks(dimension, cfg.n_max, cfg.split_depth, cfg.workers);
  const double log_lambda = dist.log_laplace(beta);
  RealSeries out(cfg.n_max);
  for (int n = 0; n <= cfg.n_max; ++n)
    out[n] = std::exp(static_cast<double>(n) * log_lambda) * static_cast<double>(c[n]);
  return out;
}

double default_good_walk_delta(const DistributionSpec& dist) {
  const double sd = dist.stddev();
  if (sd > 0.0) return 0.25 * sd;
  return 0.25 * (std::fabs(dist.mean()) + 1.0);
}

}  // namespace sawq
