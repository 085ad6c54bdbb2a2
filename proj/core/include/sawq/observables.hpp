#pragma once

#include <utility>
#include <vector>

#include "sawq/enumeration.hpp"
#include "sawq/environment.hpp"
#include "sawq/superaccumulator.hpp"

namespace sawq {

// Per-length weighted walk counts in one fixed environment. `counts` holds
// the values as doubles (which may round to 0 or inf far outside the double
// range); `log_counts` stays finite whenever the underlying sum is nonzero,
// which is what growth-rate fits consume.
struct QuenchedSeries {
  RealSeries counts;
  std::vector<double> log_counts;
  Point origin;
  double beta = 0.0;
};

struct TruncatedSusceptibility {
  double partial_sum = 0.0;  // sum_{n <= n_max} e^{-h n} c_hat(x;n), >= 1
  double log_partial_sum = 0.0;
  double tail_ratio = 0.0;  // term at n_max divided by the partial sum
  int n_max = 0;
};

// All endpoint values of one source: value(y) = weighted sum over walks from
// x to y with |walk| <= n_max. Entries are sorted by endpoint; `total` is the
// exact endpoint partition of the susceptibility partial sum.
struct TwoPointField {
  std::vector<std::pair<Point, double>> values;
  double total = 0.0;
};

struct GoodWalkStats {
  CountSeries good;   // walks whose average centered conductance lies in (-delta, delta)
  CountSeries total;  // c(n)
  double delta = 0.0;
};

QuenchedSeries quenched_counts(const Environment& env, double beta, const Point& x,
                               const EnumerationConfig& cfg);

TruncatedSusceptibility quenched_susceptibility(const Environment& env, double h, double beta,
                                                const Point& x, const EnumerationConfig& cfg);

double two_point(const Environment& env, double h, double beta, const Point& x, const Point& y,
                 const EnumerationConfig& cfg);

TwoPointField two_point_field(const Environment& env, double h, double beta, const Point& x,
                              const EnumerationConfig& cfg);

GoodWalkStats good_walk_counts(const Environment& env, const Point& x, double delta,
                               const EnumerationConfig& cfg);

// lambda(beta)^n c(n): the environment average of the quenched counts.
RealSeries annealed_counts(const DistributionSpec& dist, double beta, int dimension,
                           const EnumerationConfig& cfg);

// 0.25 * stddev, or 0.25 * (|mean| + 1) for degenerate laws.
double default_good_walk_delta(const DistributionSpec& dist);

}  // namespace sawq
