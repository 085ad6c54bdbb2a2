#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sawq/estimators.hpp"
#include "sawq/observables.hpp"
#include "sawq/report.hpp"

namespace sawq {

// Truncation-aware form of the neighbor comparison for one pair (u, v):
//   chi_{<=n}(u) <= chi_{<=n}(v)^2 + e^{h + beta X_{(v,u)}} * chi_{<=n+1}(v).
// The n+1 on the last factor accounts for the prepended step from v to u.
// This holds as a theorem at every truncation, so a single failure is an
// implementation bug, not noise.
DiagnosticsReport verify_neighbor_inequality(const Environment& env, double h, double beta,
                                             const Point& u, const Point& v, int n_max,
                                             int split_depth = 0, int workers = 1);

struct NeighborBatchConfig {
  int dimension = 2;
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  int n_max = 8;
  int trials = 100;
  uint64_t seed = 1;   // drives environment seeds and instance draws
  double h_lo = 0.5, h_hi = 2.0;
  double beta_lo = 0.0, beta_hi = 1.0;
  int box_radius = 3;  // |u| coordinates drawn from [-radius, radius]
  int workers = 1;
};

DiagnosticsReport neighbor_inequality_batch(const NeighborBatchConfig& cfg);

// Empirical second-moment comparison P(Z >= eps E[Z]) vs (1-eps)^2 E[Z]^2/E[Z^2],
// with Monte Carlo slack on both sides.
DiagnosticsReport paley_zygmund_check(std::span<const double> samples, double epsilon,
                                      double slack_sigmas = 4.0);

struct BubbleConfig {
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  double beta = 0.0;
  double h = 1.0;
  int dimension = 2;
  int n_max = 6;
  int samples = 2;      // environment draws; beta == 0 is deterministic and may use 1
  uint64_t seed_base = 1;
  int workers = 1;
};

struct BubbleEstimate {
  double b1 = 0.0;  // E sum_y G(x,y)^2
  double b2 = 0.0;  // E sum_{y,z} G(x,z) G(z,y)^2 G(y,x)
  double std_error_b1 = 0.0;
  double std_error_b2 = 0.0;
  int n_max = 0;
  int samples = 0;
};

BubbleEstimate bubble_estimates(const BubbleConfig& cfg);

struct VarianceRatioConfig {
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  std::vector<double> betas;  // grid; a single entry checks the bound only
  double h = 1.0;
  int dimension = 2;
  int n_max = 6;
  int samples = 100;
  uint64_t seed_base = 1;
  double slope_lo = 1.6, slope_hi = 2.4;  // accepted log-log slope window
  double bound_factor = 2.0;              // order-one constant in the bound check
  int workers = 1;
};

// R(beta) = Var[chi] / E[chi]^2 over environment draws at fixed truncation,
// its log-log slope over the beta grid, and the scaling bound
// R <= C e^{-2h} (2d B1 + e^h lambda^{-1} B2)(lambda_{2beta} - lambda_beta^2)
// with the bubbles evaluated at beta = 0.
DiagnosticsReport variance_ratio(const VarianceRatioConfig& cfg);

struct FracMomConfig {
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  double beta = 1.0;
  double theta = 0.5;  // in (0,1)
  int dimension = 2;
  int n_lo = 4, n_hi = 10;
  int samples = 100;
  uint64_t seed_base = 1;
  int workers = 1;
};

// rho(n) = E[c_hat(x;n)^theta] / E[c_hat(x;n)]^theta and rho(n)^{1/n}.
// Always inconclusive-exploratory: a decay rate below one is only evidence,
// never a verdict.
DiagnosticsReport fractional_moment_probe(const FracMomConfig& cfg);

}  // namespace sawq
