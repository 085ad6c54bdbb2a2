#include "sawq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "sawq/io.hpp"
#include "sawq/mixing.hpp"
#include "sawq/parallel.hpp"
#include "sawq/stats.hpp"

namespace sawq {

namespace {

Json coords_json(const Point& p) { return point_to_json(p.c); }

std::string format_label(double v) { return format_double(v); }

struct Moments4 {
  uint64_t n = 0;
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;

  static Moments4 of(std::span<const double> v) {
    Moments4 m;
    m.n = v.size();
    for (double x : v) {
      m.m1 += x;
      m.m2 += x * x;
      m.m3 += x * x * x;
      m.m4 += x * x * x * x;
    }
    const double n = static_cast<double>(m.n);
    m.m1 /= n;
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    return m;
  }
};

bool all_bits_equal(std::span<const double> v) {
  if (v.empty()) return true;
  uint64_t ref = 0;
  std::memcpy(&ref, &v[0], sizeof(ref));
  for (double x : v) {
    uint64_t w = 0;
    std::memcpy(&w, &x, sizeof(w));
    if (w != ref) return false;
  }
  return true;
}

}  // namespace

DiagnosticsReport verify_neighbor_inequality(const Environment& env, double h, double beta,
                                             const Point& u, const Point& v, int n_max,
                                             int split_depth, int workers) {
  const Bond bond = canonical_bond(v, u);  // throws for non-adjacent pairs
  const double x_vu = env.conductance(bond);

  EnumerationConfig cfg;
  cfg.dimension = env.dimension();
  cfg.n_max = n_max;
  cfg.split_depth = split_depth;
  cfg.workers = workers;
  const double chi_u = quenched_susceptibility(env, h, beta, u, cfg).partial_sum;
  const double chi_v = quenched_susceptibility(env, h, beta, v, cfg).partial_sum;
  EnumerationConfig cfg1 = cfg;
  cfg1.n_max = n_max + 1;
  const double chi_v_plus = quenched_susceptibility(env, h, beta, v, cfg1).partial_sum;

  const double lhs = chi_u;
  const double rhs = chi_v * chi_v + std::exp(h + beta * x_vu) * chi_v_plus;
  const double fp_slack = 1e-12 * (1.0 + rhs);
  const bool ok = lhs <= rhs + fp_slack;

  DiagnosticsReport rep;
  rep.name = "neighbor-inequality";
  rep.inputs["seed"] = env.seed();
  rep.inputs["dist"] = env.dist().to_string();
  rep.inputs["h"] = h;
  rep.inputs["beta"] = beta;
  rep.inputs["u"] = coords_json(u);
  rep.inputs["v"] = coords_json(v);
  rep.inputs["n_max"] = n_max;
  rep.statistics = {{"lhs_chi_u", lhs, 0.0},
                    {"rhs", rhs, 0.0},
                    {"chi_v", chi_v, 0.0},
                    {"chi_v_n_plus_1", chi_v_plus, 0.0},
                    {"bond_conductance", x_vu, 0.0}};
  rep.tolerance = fp_slack;
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!ok) {
    Json f;
    f["seed"] = env.seed();
    f["u"] = coords_json(u);
    f["v"] = coords_json(v);
    f["h"] = h;
    f["beta"] = beta;
    f["lhs"] = lhs;
    f["rhs"] = rhs;
    rep.failures.push_back(f);
  }
  return rep;
}

DiagnosticsReport neighbor_inequality_batch(const NeighborBatchConfig& cfg) {
  struct Trial {
    bool ok = false;
    Json detail;
  };
  std::vector<Trial> trials(static_cast<size_t>(cfg.trials));

  parallel_for(static_cast<uint64_t>(cfg.trials), cfg.workers, [&](uint64_t i) {
    SplitMix64 draw(mix_combine(cfg.seed, i));
    const uint64_t env_seed = draw.next();
    std::vector<Coord> coords(static_cast<size_t>(cfg.dimension));
    for (auto& c : coords)
      c = static_cast<Coord>(static_cast<int64_t>(draw.below(2 * cfg.box_radius + 1)) - cfg.box_radius);
    Point u(coords);
    const int dir = static_cast<int>(draw.below(static_cast<uint64_t>(2 * cfg.dimension)));
    Point v = u.shifted(dir >> 1, (dir & 1) ? -1 : 1);
    const double h = draw.range(cfg.h_lo, cfg.h_hi);
    const double beta = draw.range(cfg.beta_lo, cfg.beta_hi);

    Environment env(cfg.dist, env_seed, cfg.dimension);
    DiagnosticsReport one = verify_neighbor_inequality(env, h, beta, u, v, cfg.n_max, 0, 1);
    Trial& t = trials[static_cast<size_t>(i)];
    t.ok = one.verdict == Verdict::pass;
    if (!t.ok) t.detail = one.failures.empty() ? one.inputs : one.failures.front();
  });

  int passed = 0;
  DiagnosticsReport rep;
  for (const auto& t : trials) {
    if (t.ok)
      ++passed;
    else
      rep.failures.push_back(t.detail);
  }
  rep.name = "neighbor-inequality-batch";
  rep.inputs["dist"] = cfg.dist.to_string();
  rep.inputs["dimension"] = cfg.dimension;
  rep.inputs["n_max"] = cfg.n_max;
  rep.inputs["trials"] = cfg.trials;
  rep.inputs["seed"] = cfg.seed;
  rep.inputs["h_range"] = Json::array({cfg.h_lo, cfg.h_hi});
  rep.inputs["beta_range"] = Json::array({cfg.beta_lo, cfg.beta_hi});
  rep.statistics = {{"passed", static_cast<double>(passed), 0.0},
                    {"trials", static_cast<double>(cfg.trials), 0.0}};
  rep.tolerance = 0.0;
  rep.verdict = (passed == cfg.trials) ? Verdict::pass : Verdict::fail;
  return rep;
}

DiagnosticsReport paley_zygmund_check(std::span<const double> samples, double epsilon,
                                      double slack_sigmas) {
  if (samples.empty()) throw std::invalid_argument("paley_zygmund_check: no samples");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("paley_zygmund_check: epsilon must lie in (0,1)");
  for (double z : samples)
    if (!(z >= 0.0)) throw std::domain_error("paley_zygmund_check: samples must be nonnegative");

  DiagnosticsReport rep;
  rep.name = "paley-zygmund";
  rep.inputs["epsilon"] = epsilon;
  rep.inputs["samples"] = static_cast<uint64_t>(samples.size());
  rep.inputs["slack_sigmas"] = slack_sigmas;

  const Moments4 m = Moments4::of(samples);
  if (m.m1 == 0.0) {
    rep.verdict = Verdict::inconclusive;
    rep.statistics = {{"mean", 0.0, 0.0}};
    return rep;
  }

  const double n = static_cast<double>(samples.size());
  int hits = 0;
  for (double z : samples)
    if (z >= epsilon * m.m1) ++hits;
  const double lhs = static_cast<double>(hits) / n;
  const double rhs = (1.0 - epsilon) * (1.0 - epsilon) * m.m1 * m.m1 / m.m2;

  const double se_lhs = std::sqrt(std::max(lhs * (1.0 - lhs), 0.0) / n);
  // delta method for g = m1^2 / m2
  const double var_z = std::max(m.m2 - m.m1 * m.m1, 0.0);
  const double var_z2 = std::max(m.m4 - m.m2 * m.m2, 0.0);
  const double cov = m.m3 - m.m1 * m.m2;
  const double d1 = 2.0 * m.m1 / m.m2;
  const double d2 = -m.m1 * m.m1 / (m.m2 * m.m2);
  const double var_g = std::max(d1 * d1 * var_z + d2 * d2 * var_z2 + 2.0 * d1 * d2 * cov, 0.0) / n;
  const double se_rhs = (1.0 - epsilon) * (1.0 - epsilon) * std::sqrt(var_g);

  const double slack = slack_sigmas * (se_lhs + se_rhs);
  rep.statistics = {{"lhs_probability", lhs, se_lhs},
                    {"rhs_bound", rhs, se_rhs},
                    {"mean", m.m1, 0.0},
                    {"second_moment", m.m2, 0.0}};
  rep.tolerance = slack;
  rep.verdict = (lhs >= rhs - slack) ? Verdict::pass : Verdict::fail;
  if (rep.verdict == Verdict::fail) {
    Json f;
    f["lhs"] = lhs;
    f["rhs"] = rhs;
    f["slack"] = slack;
    rep.failures.push_back(f);
  }
  return rep;
}

namespace {

// per-seed truncated bubble sums on one environment draw
void bubble_one_seed(const BubbleConfig& cfg, uint64_t seed, double& b1_out, double& b2_out) {
  const Point x = Point::origin(cfg.dimension);
  Environment env(cfg.dist, seed, cfg.dimension);
  EnumerationConfig ecfg;
  ecfg.dimension = cfg.dimension;
  ecfg.n_max = cfg.n_max;
  ecfg.split_depth = 0;
  ecfg.workers = 1;

  const TwoPointField gx = two_point_field(env, cfg.h, cfg.beta, x, ecfg);

  double b1 = 0.0;
  for (const auto& [p, v] : gx.values) b1 += v * v;

  // dense lookup of G(x, .) over the reachable box; entries off the box are 0
  FoldGeometry geom(x, cfg.n_max);
  std::vector<double> gx_dense;
  std::unordered_map<std::vector<Coord>, double, detail::CoordsVecHash> gx_sparse;
  if (geom.dense()) {
    gx_dense.assign(static_cast<size_t>(geom.cells()), 0.0);
    for (const auto& [p, v] : gx.values)
      gx_dense[static_cast<size_t>(geom.cell_index(p.c))] = v;
  } else {
    for (const auto& [p, v] : gx.values) gx_sparse.emplace(p.c, v);
  }
  auto gx_at = [&](std::span<const Coord> p) -> double {
    if (!geom.contains(p)) return 0.0;
    if (geom.dense()) return gx_dense[static_cast<size_t>(geom.cell_index(p))];
    auto it = gx_sparse.find(std::vector<Coord>(p.begin(), p.end()));
    return it == gx_sparse.end() ? 0.0 : it->second;
  };

  // B2 follows the cycle x -> z -> y -> x; the y,z ranges are the walks'
  // reachable box and G(y,x) = G(x,y) by walk reversal.
  std::vector<double> per_source(gx.values.size(), 0.0);
  parallel_for(gx.values.size(), cfg.workers, [&](uint64_t i) {
    const auto& [z, gxz] = gx.values[static_cast<size_t>(i)];
    if (gxz == 0.0) return;
    const TwoPointField gz = two_point_field(env, cfg.h, cfg.beta, z, ecfg);
    double inner = 0.0;
    for (const auto& [y, gzy] : gz.values) {
      const double gxy = gx_at(y.c);
      if (gxy != 0.0) inner += gzy * gzy * gxy;
    }
    per_source[static_cast<size_t>(i)] = gxz * inner;
  });
  double b2 = 0.0;
  for (double t : per_source) b2 += t;

  b1_out = b1;
  b2_out = b2;
}

}  // namespace

BubbleEstimate bubble_estimates(const BubbleConfig& cfg) {
  if (!(cfg.beta >= 0.0)) throw std::domain_error("beta must be >= 0");
  if (cfg.samples < 1) throw std::invalid_argument("bubble_estimates: samples must be >= 1");
  if (cfg.samples < 2 && cfg.beta != 0.0)
    throw std::invalid_argument("bubble_estimates: need >= 2 samples to report a std_error");

  const int samples = (cfg.beta == 0.0) ? 1 : cfg.samples;  // beta 0 is deterministic
  MomentAccumulator m1, m2;
  for (int s = 0; s < samples; ++s) {
    double b1 = 0.0, b2 = 0.0;
    bubble_one_seed(cfg, cfg.seed_base + static_cast<uint64_t>(s), b1, b2);
    m1.add(b1);
    m2.add(b2);
  }

  BubbleEstimate out;
  out.b1 = m1.mean();
  out.b2 = m2.mean();
  out.std_error_b1 = m1.std_error();
  out.std_error_b2 = m2.std_error();
  out.n_max = cfg.n_max;
  out.samples = samples;
  return out;
}

DiagnosticsReport variance_ratio(const VarianceRatioConfig& cfg) {
  if (cfg.betas.empty()) throw std::invalid_argument("variance_ratio: empty beta grid");
  for (double b : cfg.betas)
    if (!(b >= 0.0)) throw std::domain_error("beta must be >= 0");
  if (cfg.samples < 2) throw std::invalid_argument("variance_ratio: need >= 2 samples");

  DiagnosticsReport rep;
  rep.name = "variance-ratio";
  rep.inputs["dist"] = cfg.dist.to_string();
  rep.inputs["h"] = cfg.h;
  rep.inputs["dimension"] = cfg.dimension;
  rep.inputs["n_max"] = cfg.n_max;
  rep.inputs["samples"] = cfg.samples;
  rep.inputs["seed_base"] = cfg.seed_base;
  rep.inputs["bound_factor"] = cfg.bound_factor;
  {
    Json bs = Json::array();
    for (double b : cfg.betas) bs.push_back(b);
    rep.inputs["betas"] = bs;
  }

  // annealed-bound advisory: h below h_a makes the truncated series a poor
  // stand-in for the full one
  const double h0_bound =
      connective_constant(cfg.dimension, std::max(cfg.n_max, 2), 0, cfg.workers).h0_upper_bound;
  for (double b : cfg.betas) {
    if (cfg.h <= h0_bound + cfg.dist.log_laplace(b)) {
      rep.inputs["warning"] = "h is at or below the annealed bound estimate for some beta";
      break;
    }
  }

  // reference bubbles at beta = 0 for the scaling bound
  BubbleConfig bc;
  bc.dist = cfg.dist;
  bc.beta = 0.0;
  bc.h = cfg.h;
  bc.dimension = cfg.dimension;
  bc.n_max = cfg.n_max;
  bc.samples = 1;
  bc.seed_base = cfg.seed_base;
  bc.workers = cfg.workers;
  const BubbleEstimate bubbles = bubble_estimates(bc);
  rep.statistics.push_back({"b1_beta0", bubbles.b1, 0.0});
  rep.statistics.push_back({"b2_beta0", bubbles.b2, 0.0});

  EnumerationConfig ecfg;
  ecfg.dimension = cfg.dimension;
  ecfg.n_max = cfg.n_max;
  ecfg.split_depth = 0;
  ecfg.workers = 1;
  const Point x = Point::origin(cfg.dimension);

  bool any_fail = false;
  std::vector<double> log_betas, log_ratios;
  for (double beta : cfg.betas) {
    std::vector<double> chi(static_cast<size_t>(cfg.samples), 0.0);
    parallel_for(static_cast<uint64_t>(cfg.samples), cfg.workers, [&](uint64_t s) {
      Environment env(cfg.dist, cfg.seed_base + s, cfg.dimension);
      chi[static_cast<size_t>(s)] = quenched_susceptibility(env, cfg.h, beta, x, ecfg).partial_sum;
    });

    double ratio = 0.0, se = 0.0;
    if (!all_bits_equal(chi)) {
      const Moments4 m = Moments4::of(chi);
      const double n = static_cast<double>(cfg.samples);
      const double var_unbiased = std::max(m.m2 - m.m1 * m.m1, 0.0) * n / (n - 1.0);
      ratio = var_unbiased / (m.m1 * m.m1);
      // delta method for m2/m1^2 - 1
      const double var_z = std::max(m.m2 - m.m1 * m.m1, 0.0);
      const double var_z2 = std::max(m.m4 - m.m2 * m.m2, 0.0);
      const double cov = m.m3 - m.m1 * m.m2;
      const double d1 = -2.0 * m.m2 / (m.m1 * m.m1 * m.m1);
      const double d2 = 1.0 / (m.m1 * m.m1);
      se = std::sqrt(std::max(d1 * d1 * var_z + d2 * d2 * var_z2 + 2.0 * d1 * d2 * cov, 0.0) / n);
    }

    const double lam = cfg.dist.laplace(beta);
    const double spread = cfg.dist.laplace(2.0 * beta) - lam * lam;
    const double rhs = std::exp(-2.0 * cfg.h) *
                       (2.0 * cfg.dimension * bubbles.b1 + std::exp(cfg.h) / lam * bubbles.b2) *
                       spread;
    const bool bound_ok = ratio <= cfg.bound_factor * rhs + 4.0 * se;
    const bool zero_ok = (beta != 0.0) || (ratio == 0.0);

    const std::string tag = "beta=" + format_label(beta);
    rep.statistics.push_back({"R(" + tag + ")", ratio, se});
    rep.statistics.push_back({"bound_rhs(" + tag + ")", rhs, 0.0});
    if (!bound_ok || !zero_ok) {
      any_fail = true;
      Json f;
      f["beta"] = beta;
      f["ratio"] = ratio;
      f["bound_rhs"] = rhs;
      f["kind"] = !zero_ok ? "nonzero-at-beta-0" : "bound-exceeded";
      rep.failures.push_back(f);
    }
    if (beta > 0.0 && ratio > 0.0) {
      log_betas.push_back(std::log(beta));
      log_ratios.push_back(std::log(ratio));
    }
  }

  if (log_betas.size() >= 2) {
    const double slope = fit_line(log_betas, log_ratios).slope;
    rep.statistics.push_back({"loglog_slope", slope, 0.0});
    if (log_betas.size() >= 3 && (slope < cfg.slope_lo || slope > cfg.slope_hi)) {
      any_fail = true;
      Json f;
      f["kind"] = "slope-out-of-range";
      f["slope"] = slope;
      f["accepted"] = Json::array({cfg.slope_lo, cfg.slope_hi});
      rep.failures.push_back(f);
    }
  }

  rep.tolerance = cfg.bound_factor;
  if (any_fail) {
    rep.verdict = Verdict::fail;
  } else if (cfg.dist.degenerate() || log_betas.empty()) {
    rep.verdict = Verdict::pass_trivial;  // R is identically zero on this grid
  } else {
    rep.verdict = Verdict::pass;
  }
  return rep;
}

DiagnosticsReport fractional_moment_probe(const FracMomConfig& cfg) {
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
    throw std::domain_error("fractional_moment_probe: theta must lie in (0,1)");
  if (!(cfg.beta >= 0.0)) throw std::domain_error("beta must be >= 0");
  if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo)
    throw std::invalid_argument("fractional_moment_probe: bad n range");
  if (cfg.samples < 2) throw std::invalid_argument("fractional_moment_probe: need >= 2 samples");

  EnumerationConfig ecfg;
  ecfg.dimension = cfg.dimension;
  ecfg.n_max = cfg.n_hi;
  ecfg.split_depth = 0;
  ecfg.workers = 1;
  const Point x = Point::origin(cfg.dimension);

  std::vector<std::vector<double>> logs(static_cast<size_t>(cfg.samples));
  parallel_for(static_cast<uint64_t>(cfg.samples), cfg.workers, [&](uint64_t s) {
    Environment env(cfg.dist, cfg.seed_base + s, cfg.dimension);
    logs[static_cast<size_t>(s)] = quenched_counts(env, cfg.beta, x, ecfg).log_counts;
  });

  DiagnosticsReport rep;
  rep.name = "fractional-moment-probe";
  rep.inputs["dist"] = cfg.dist.to_string();
  rep.inputs["beta"] = cfg.beta;
  rep.inputs["theta"] = cfg.theta;
  rep.inputs["dimension"] = cfg.dimension;
  rep.inputs["n_range"] = Json::array({cfg.n_lo, cfg.n_hi});
  rep.inputs["samples"] = cfg.samples;
  rep.inputs["seed_base"] = cfg.seed_base;

  const double n_inv = 1.0 / static_cast<double>(cfg.samples);
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    double a_sum = 0.0, b_sum = 0.0, a2 = 0.0, b2 = 0.0, ab = 0.0;
    for (const auto& row : logs) {
      const double lc = row[static_cast<size_t>(n)];
      const double c = std::exp(lc);
      const double c_theta = std::exp(cfg.theta * lc);
      a_sum += c_theta;
      b_sum += c;
      a2 += c_theta * c_theta;
      b2 += c * c;
      ab += c_theta * c;
    }
    const double ma = a_sum * n_inv, mb = b_sum * n_inv;
    const double var_a = std::max(a2 * n_inv - ma * ma, 0.0);
    const double var_b = std::max(b2 * n_inv - mb * mb, 0.0);
    const double cov_ab = ab * n_inv - ma * mb;
    const double rho = ma / std::pow(mb, cfg.theta);
    const double rel_var = var_a / (ma * ma) + cfg.theta * cfg.theta * var_b / (mb * mb) -
                           2.0 * cfg.theta * cov_ab / (ma * mb);
    const double se = rho * std::sqrt(std::max(rel_var, 0.0) * n_inv);
    rep.statistics.push_back({"rho(n=" + std::to_string(n) + ")", rho, se});
    rep.statistics.push_back(
        {"rho_root(n=" + std::to_string(n) + ")", std::pow(rho, 1.0 / static_cast<double>(n)), 0.0});
  }

  rep.tolerance = 0.0;
  rep.verdict = Verdict::exploratory;  // the decay constants have no proved values here
  return rep;
}

}  // namespace sawq
