#include "sawq/estimators.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sawq/parallel.hpp"
#include "sawq/stats.hpp"

namespace sawq {

ConnectiveConstantEstimate connective_constant(int dimension, int n_max, int split_depth,
                                               int workers) {
  if (n_max < 2) throw std::invalid_argument("connective_constant: n_max must be >= 2");
  ConnectiveConstantEstimate out;
  out.counts = count_walks(dimension, n_max, split_depth, workers);
  out.root_per_n.assign(static_cast<size_t>(n_max) + 1, 0.0);
  out.running_inf.assign(static_cast<size_t>(n_max) + 1, 0.0);
  double inf = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const double root =
        std::exp(std::log(static_cast<double>(out.counts[n])) / static_cast<double>(n));
    out.root_per_n[static_cast<size_t>(n)] = root;
    inf = std::min(inf, root);
    out.running_inf[static_cast<size_t>(n)] = inf;
  }
  out.inf_root = inf;
  out.h0_upper_bound = std::log(inf);
  return out;
}

GrowthEstimate quenched_growth_rate(const Environment& env, double beta, const Point& x,
                                    const EnumerationConfig& cfg, int window_lo, int window_hi) {
  if (window_lo == 0 && window_hi == 0) {
    window_lo = (cfg.n_max + 1) / 2;
    window_hi = cfg.n_max;
  }
  if (window_lo < 1 || window_hi > cfg.n_max || window_hi - window_lo + 1 < 3)
    throw std::invalid_argument("quenched_growth_rate: window must lie in [1, n_max] with >= 3 points");

  const QuenchedSeries series = quenched_counts(env, beta, x, cfg);
  std::vector<double> xs, ys;
  xs.reserve(static_cast<size_t>(window_hi - window_lo + 1));
  ys.reserve(xs.capacity());
  for (int n = window_lo; n <= window_hi; ++n) {
    const double ln = series.log_counts[static_cast<size_t>(n)];
    if (!std::isfinite(ln))
      throw std::runtime_error("quenched_growth_rate: zero weighted count inside fit window");
    xs.push_back(static_cast<double>(n));
    ys.push_back(ln);
  }
  const LinearFit fit = fit_line(xs, ys);

  GrowthEstimate out;
  out.slope = fit.slope;
  out.n_lo = window_lo;
  out.n_hi = window_hi;
  out.residual = fit.rms_residual;
  out.per_n.assign(static_cast<size_t>(cfg.n_max) + 1, 0.0);
  for (int n = 1; n <= cfg.n_max; ++n)
    out.per_n[static_cast<size_t>(n)] =
        series.log_counts[static_cast<size_t>(n)] / static_cast<double>(n);
  return out;
}

CriticalBounds theorem_bounds(const DistributionSpec& dist, double beta, double h0_est) {
  CriticalBounds b;
  b.beta = beta;
  b.h0 = h0_est;
  b.lower = jensen_lower_bound(dist, beta, h0_est);
  b.upper = annealed_critical_point(dist, beta, h0_est);
  return b;
}

SandwichReport sandwich_report(const SandwichConfig& cfg) {
  if (cfg.seeds.size() < 2) throw std::invalid_argument("sandwich_report: need at least 2 seeds");
  std::vector<Point> refs = cfg.reference_points;
  if (refs.empty()) {
    refs.push_back(Point::origin(cfg.dimension));
    refs.push_back(Point(std::vector<Coord>(static_cast<size_t>(cfg.dimension), 1)));
  }

  SandwichReport rep;
  rep.beta = cfg.beta;

  double h0 = cfg.h0_exact;
  if (std::isfinite(h0)) {
    rep.h0_is_exact = true;
  } else {
    h0 = connective_constant(cfg.dimension, cfg.n_max, cfg.split_depth, cfg.workers).h0_upper_bound;
  }
  rep.h0_est = h0;
  rep.bounds = theorem_bounds(cfg.dist, cfg.beta, h0);

  EnumerationConfig ecfg;
  ecfg.dimension = cfg.dimension;
  ecfg.n_max = cfg.n_max;
  ecfg.split_depth = cfg.split_depth;
  ecfg.workers = 1;  // parallelism lives over (seed, ref) jobs here

  const size_t jobs = cfg.seeds.size() * refs.size();
  rep.estimates.assign(jobs, SandwichEstimate{});
  parallel_for(jobs, cfg.workers, [&](uint64_t j) {
    const size_t si = static_cast<size_t>(j) / refs.size();
    const size_t ri = static_cast<size_t>(j) % refs.size();
    Environment env(cfg.dist, cfg.seeds[si], cfg.dimension);
    const GrowthEstimate g =
        quenched_growth_rate(env, cfg.beta, refs[ri], ecfg, cfg.window_lo, cfg.window_hi);
    SandwichEstimate& e = rep.estimates[static_cast<size_t>(j)];
    e.seed = cfg.seeds[si];
    e.x = refs[ri];
    e.slope = g.slope;
    e.residual = g.residual;
  });

  auto slope_at = [&](size_t si, size_t ri) { return rep.estimates[si * refs.size() + ri].slope; };

  double cross_seed = 0.0;
  for (size_t ri = 0; ri < refs.size(); ++ri) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t si = 0; si < cfg.seeds.size(); ++si) {
      lo = std::min(lo, slope_at(si, ri));
      hi = std::max(hi, slope_at(si, ri));
    }
    cross_seed = std::max(cross_seed, hi - lo);
  }
  double cross_ref = 0.0;
  for (size_t si = 0; si < cfg.seeds.size(); ++si) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t ri = 0; ri < refs.size(); ++ri) {
      lo = std::min(lo, slope_at(si, ri));
      hi = std::max(hi, slope_at(si, ri));
    }
    cross_ref = std::max(cross_ref, hi - lo);
  }
  rep.cross_seed_dispersion = cross_seed;
  rep.cross_ref_dispersion = cross_ref;

  double tol = cfg.tol;
  if (tol < 0.0) {
    double max_res = 0.0;
    for (const auto& e : rep.estimates) max_res = std::max(max_res, e.residual);
    tol = 3.0 * max_res + 0.1;  // slack for the unknown gap between h0_est and the true h0
  }
  rep.tol = tol;

  bool ok = true;
  for (const auto& e : rep.estimates)
    ok = ok && e.slope >= rep.bounds.lower - tol && e.slope <= rep.bounds.upper + tol;
  rep.pass = ok;
  return rep;
}

}  // namespace sawq
