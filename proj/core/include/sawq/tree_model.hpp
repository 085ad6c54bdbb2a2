#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sawq/distribution.hpp"

namespace sawq {

// Self-avoiding walk on the homogeneous tree of degree ell with i.i.d. bond
// conductances. Walks from the root are exactly the descending paths, so the
// n-step count is ell*(ell-1)^(n-1) and the normalized partition function
//   Z(n) = sum over n-step walks of prod_j e^{-beta X_j} / lambda(beta),
//          divided by ell*(ell-1)^(n-1),
// has mean one for every n.
struct TreeConfig {
  int degree = 3;  // ell >= 3
  DistributionSpec dist = DistributionSpec::gaussian(0.0, 1.0);
  double beta = 0.0;
  int depth = 1;
  uint64_t seed = 1;
  uint64_t budget = 100000000;  // max walks visited; exceeded -> BudgetError
};

struct MartingaleTrajectory {
  std::vector<double> z;  // z[i] = Z(i+1) for i = 0..depth-1
};

// Number of walks visited by one trajectory, saturating.
uint64_t tree_visit_bound(int degree, int depth);

// f(beta) = [log(ell-1) + log lambda(beta)] - beta * lambda'(beta)/lambda(beta).
// Positive f keeps the martingale limit positive almost surely; f(0) =
// log(ell-1) and f is non-increasing in beta.
double dichotomy_f(int degree, const DistributionSpec& dist, double beta);

// Smallest root of f on [0, beta_hi], located by scan plus bisection;
// nullopt when f stays positive on the whole interval.
std::optional<double> dichotomy_root(int degree, const DistributionSpec& dist, double beta_hi,
                                     double tol = 1e-6);

// Exact Z(1..depth) for one seed by full traversal of the descending paths;
// conductances come from a pure hash of each edge's root path, so the
// trajectory is a deterministic function of (seed, config).
MartingaleTrajectory simulate_martingale(const TreeConfig& cfg);

struct MartingaleEnsemble {
  std::vector<double> mean_z;  // index n-1, mean over seeds of Z(n)
  std::vector<double> se_z;
  double frac_above_cut = 0.0;  // fraction of trajectories with Z(depth) > cut
  double f_beta = 0.0;
  int depth = 0;
  int num_seeds = 0;
  double cut = 0.0;
};

// Trajectories for seeds cfg.seed .. cfg.seed + num_seeds - 1.
MartingaleEnsemble martingale_ensemble(const TreeConfig& cfg, int num_seeds, double cut = 0.01,
                                       int workers = 1);

}  // namespace sawq
