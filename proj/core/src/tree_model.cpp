#include "sawq/tree_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sawq/errors.hpp"
#include "sawq/mixing.hpp"
#include "sawq/parallel.hpp"
#include "sawq/stats.hpp"
#include "sawq/superaccumulator.hpp"

namespace sawq {

namespace {

constexpr uint64_t kTreeDomain = 0x51c64f7d9a0b3e2dULL;

void check_tree(int degree, double beta) {
  if (degree < 3) throw std::invalid_argument("tree model: degree must be >= 3");
  if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
}

struct TreeWalker {
  const DistributionSpec* dist;
  double beta;
  double log_lambda;
  int depth_limit;
  int branch;  // children below the root
  std::vector<Superaccumulator> acc;  // per depth, index n-1
  std::vector<double> saved;

  // address is the running hash of the root path; edges are keyed by the
  // child node's address
  void descend(uint64_t address, int depth, double log_weight) {
    const int children = (depth == 0) ? branch + 1 : branch;
    for (int i = 0; i < children; ++i) {
      const uint64_t child = mix_combine(address, static_cast<uint64_t>(i) + 1);
      const double x = dist->sample(child);
      const double lw = log_weight - beta * x - log_lambda;
      acc[static_cast<size_t>(depth)].add_exp(lw);
      if (depth + 1 < depth_limit) descend(child, depth + 1, lw);
    }
  }
};

}  // namespace

uint64_t tree_visit_bound(int degree, int depth) {
  if (depth <= 0) return 0;
  const unsigned __int128 cap = std::numeric_limits<uint64_t>::max();
  unsigned __int128 total = 0;
  unsigned __int128 term = static_cast<unsigned>(degree);
  for (int n = 1; n <= depth; ++n) {
    total += term;
    if (total > cap) return std::numeric_limits<uint64_t>::max();
    term *= static_cast<unsigned>(degree - 1);
  }
  return static_cast<uint64_t>(total);
}

double dichotomy_f(int degree, const DistributionSpec& dist, double beta) {
  check_tree(degree, beta);
  const double log_lambda = dist.log_laplace(beta);
  const double ratio = dist.laplace_derivative(beta) / dist.laplace(beta);
  return std::log(static_cast<double>(degree - 1)) + log_lambda - beta * ratio;
}

std::optional<double> dichotomy_root(int degree, const DistributionSpec& dist, double beta_hi,
                                     double tol) {
  check_tree(degree, 0.0);
  if (!(beta_hi > 0.0)) throw std::invalid_argument("dichotomy_root: beta_hi must be > 0");
  const int kScan = 256;
  double lo = 0.0;
  double flo = dichotomy_f(degree, dist, lo);
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kScan; ++i) {
    hi = beta_hi * static_cast<double>(i) / kScan;
    const double fhi = dichotomy_f(degree, dist, hi);
    if (flo > 0.0 && fhi <= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
    flo = fhi;
  }
  if (!bracketed) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (dichotomy_f(degree, dist, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

MartingaleTrajectory simulate_martingale(const TreeConfig& cfg) {
  check_tree(cfg.degree, cfg.beta);
  if (cfg.depth < 1) throw std::invalid_argument("simulate_martingale: depth must be >= 1");
  const uint64_t bound = tree_visit_bound(cfg.degree, cfg.depth);
  if (bound > cfg.budget)
    throw BudgetError("tree traversal would visit " + std::to_string(bound) +
                      " walks, over the budget of " + std::to_string(cfg.budget));

  TreeWalker w;
  w.dist = &cfg.dist;
  w.beta = cfg.beta;
  w.log_lambda = cfg.dist.log_laplace(cfg.beta);
  w.depth_limit = cfg.depth;
  w.branch = cfg.degree - 1;
  w.acc.assign(static_cast<size_t>(cfg.depth), Superaccumulator{});
  w.descend(mix_combine(cfg.seed, kTreeDomain), 0, 0.0);

  MartingaleTrajectory out;
  out.z.resize(static_cast<size_t>(cfg.depth));
  double norm = static_cast<double>(cfg.degree);
  for (int n = 1; n <= cfg.depth; ++n) {
    out.z[static_cast<size_t>(n - 1)] = w.acc[static_cast<size_t>(n - 1)].to_double() / norm;
    norm *= static_cast<double>(cfg.degree - 1);
  }
  return out;
}

MartingaleEnsemble martingale_ensemble(const TreeConfig& cfg, int num_seeds, double cut,
                                       int workers) {
  if (num_seeds < 1) throw std::invalid_argument("martingale_ensemble: need at least one seed");
  std::vector<MartingaleTrajectory> runs(static_cast<size_t>(num_seeds));
  parallel_for(static_cast<uint64_t>(num_seeds), workers, [&](uint64_t i) {
    TreeConfig c = cfg;
    c.seed = cfg.seed + i;
    runs[static_cast<size_t>(i)] = simulate_martingale(c);
  });

  MartingaleEnsemble out;
  out.depth = cfg.depth;
  out.num_seeds = num_seeds;
  out.cut = cut;
  out.f_beta = dichotomy_f(cfg.degree, cfg.dist, cfg.beta);
  out.mean_z.resize(static_cast<size_t>(cfg.depth));
  out.se_z.resize(static_cast<size_t>(cfg.depth));
  for (int n = 0; n < cfg.depth; ++n) {
    MomentAccumulator m;
    for (const auto& r : runs) m.add(r.z[static_cast<size_t>(n)]);
    out.mean_z[static_cast<size_t>(n)] = m.mean();
    out.se_z[static_cast<size_t>(n)] = m.std_error();
  }
  int above = 0;
  for (const auto& r : runs)
    if (r.z.back() > cut) ++above;
  out.frac_above_cut = static_cast<double>(above) / static_cast<double>(num_seeds);
  return out;
}

}  // namespace sawq
