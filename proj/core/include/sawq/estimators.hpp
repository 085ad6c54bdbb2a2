#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "sawq/observables.hpp"

namespace sawq {

struct ConnectiveConstantEstimate {
  CountSeries counts;                // c(n)
  std::vector<double> root_per_n;    // c(n)^(1/n), index n (0 unused)
  std::vector<double> running_inf;   // inf over 1..n of the roots
  double inf_root = 0.0;             // rigorous upper bound on mu
  double h0_upper_bound = 0.0;       // log(inf_root)
};

ConnectiveConstantEstimate connective_constant(int dimension, int n_max, int split_depth = 0,
                                               int workers = 1);

// Least-squares slope of log c_hat(x;n) over n in [n_lo, n_hi]: the growth
// rate of the weighted counts, which is where the truncated susceptibility
// stops converging.
struct GrowthEstimate {
  double slope = 0.0;
  int n_lo = 0, n_hi = 0;
  double residual = 0.0;        // rms residual of the fit
  std::vector<double> per_n;    // (1/n) log c_hat(x;n), index n (0 unused)
};

// window_lo/window_hi = 0 picks the default window [ceil(n_max/2), n_max].
GrowthEstimate quenched_growth_rate(const Environment& env, double beta, const Point& x,
                                    const EnumerationConfig& cfg, int window_lo = 0,
                                    int window_hi = 0);

struct CriticalBounds {
  double lower = 0.0;  // h0 - beta E[X]
  double upper = 0.0;  // h0 + log lambda(beta)
  double h0 = 0.0;
  double beta = 0.0;
};

CriticalBounds theorem_bounds(const DistributionSpec& dist, double beta, double h0_est);

struct SandwichConfig {
  int dimension = 2;
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  double beta = 0.0;
  int n_max = 10;
  int split_depth = 0;
  int workers = 1;
  std::vector<uint64_t> seeds;            // at least 2
  std::vector<Point> reference_points;    // empty: origin and the all-ones point
  double tol = -1.0;                      // < 0: 3 * max fit residual + 0.1
  double h0_exact = std::nan("");         // finite: use instead of the inf bound
  int window_lo = 0, window_hi = 0;
};

struct SandwichEstimate {
  uint64_t seed = 0;
  Point x;
  double slope = 0.0;
  double residual = 0.0;
};

struct SandwichReport {
  double beta = 0.0;
  CriticalBounds bounds;
  double h0_est = 0.0;
  bool h0_is_exact = false;
  std::vector<SandwichEstimate> estimates;
  double cross_seed_dispersion = 0.0;  // max over ref points of the seed spread of slopes
  double cross_ref_dispersion = 0.0;   // max over seeds of the ref-point spread of slopes
  double tol = 0.0;
  bool pass = false;
};

SandwichReport sandwich_report(const SandwichConfig& cfg);

}  // namespace sawq
