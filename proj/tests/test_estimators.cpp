#include "sawq/estimators.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "doctest.h"

using namespace sawq;

namespace {
EnumerationConfig make_cfg(int d, int n_max) {
  EnumerationConfig cfg;
  cfg.dimension = d;
  cfg.n_max = n_max;
  return cfg;
}
}  // namespace

TEST_CASE("connective constant: d=1 roots approach 1 from above") {
  const auto est = connective_constant(1, 12);
  for (int n = 1; n <= 12; ++n)
    CHECK(est.root_per_n[static_cast<size_t>(n)] ==
          doctest::Approx(std::pow(2.0, 1.0 / n)).epsilon(1e-12));
  // the running infimum lands at n_max and bounds mu = 1 from above
  CHECK(est.inf_root == doctest::Approx(std::pow(2.0, 1.0 / 12.0)).epsilon(1e-12));
  CHECK(est.inf_root > 1.0);
  CHECK(est.h0_upper_bound > 0.0);
}

TEST_CASE("connective constant: d=2 pinned values and inf monotonicity") {
  const auto est = connective_constant(2, 10);
  CHECK(est.counts[10] == 44100);
  CHECK(est.root_per_n[10] == doctest::Approx(std::pow(44100.0, 0.1)).epsilon(1e-12));
  CHECK(est.root_per_n[10] == doctest::Approx(2.91369).epsilon(1e-4));
  CHECK(est.inf_root > 2.6381);  // stays above the true mu
  for (int n = 2; n <= 10; ++n)
    CHECK(est.running_inf[static_cast<size_t>(n)] <=
          est.running_inf[static_cast<size_t>(n - 1)] + 1e-15);
  CHECK(est.root_per_n[1] == doctest::Approx(4.0));  // c(1) = 2d

  CHECK_THROWS_AS(connective_constant(2, 1), std::invalid_argument);
}

TEST_CASE("growth rate at beta 0 tracks the homogeneous slope") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 1, 2);
  const auto g = quenched_growth_rate(env, 0.0, Point::origin(2), make_cfg(2, 12), 6, 12);
  // window slope of log c(n) sits between log mu and the n_max root bound
  CHECK(g.slope > std::log(2.6));
  CHECK(g.slope < std::log(2.91370));
  CHECK(g.n_lo == 6);
  CHECK(g.n_hi == 12);
  CHECK(g.residual >= 0.0);
  CHECK(g.residual < 0.05);
}

TEST_CASE("growth rate at beta 0 is seed independent bit for bit") {
  const auto cfg = make_cfg(2, 10);
  Environment e1(DistributionSpec::gaussian(0.0, 1.0), 1, 2);
  Environment e2(DistributionSpec::gaussian(0.0, 1.0), 999, 2);
  const auto g1 = quenched_growth_rate(e1, 0.0, Point::origin(2), cfg);
  const auto g2 = quenched_growth_rate(e2, 0.0, Point::origin(2), cfg);
  CHECK(std::memcmp(&g1.slope, &g2.slope, sizeof(double)) == 0);
}

TEST_CASE("constant environment shifts the slope by exactly -beta*c") {
  const double cval = 1.1;
  const auto cfg = make_cfg(2, 10);
  Environment env(DistributionSpec::constant(cval), 4, 2);
  const auto g0 = quenched_growth_rate(env, 0.0, Point::origin(2), cfg);
  for (double beta : {0.3, 1.0}) {
    const auto gb = quenched_growth_rate(env, beta, Point::origin(2), cfg);
    CHECK(gb.slope - g0.slope == doctest::Approx(-beta * cval).epsilon(1e-10));
  }
}

TEST_CASE("1D growth rate approaches -beta E[X]") {
  // cheap version of the long-run check; the acceptance suite runs n=4000
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 3, 1);
  const auto g = quenched_growth_rate(env, 1.0, Point::origin(1), make_cfg(1, 2000), 1, 2000);
  CHECK(std::fabs(g.slope - 0.0) < 0.08);
}

TEST_CASE("window validation") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 1, 2);
  const auto cfg = make_cfg(2, 8);
  CHECK_THROWS_AS(quenched_growth_rate(env, 0.0, Point::origin(2), cfg, 7, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(quenched_growth_rate(env, 0.0, Point::origin(2), cfg, 0, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(quenched_growth_rate(env, 0.0, Point::origin(2), cfg, 5, 9),
                  std::invalid_argument);
}

TEST_CASE("theorem bounds") {
  const auto g = DistributionSpec::gaussian(0.0, 1.0);
  const auto b0 = theorem_bounds(g, 0.0, 0.9705);
  CHECK(b0.lower == doctest::Approx(0.9705));
  CHECK(b0.upper == doctest::Approx(0.9705));

  const auto bc = theorem_bounds(DistributionSpec::constant(0.5), 1.2, 0.9705);
  CHECK(bc.lower == doctest::Approx(0.9705 - 0.6));
  CHECK(bc.upper == doctest::Approx(bc.lower).epsilon(1e-12));  // degenerate: Jensen is tight

  const auto bg = theorem_bounds(g, 1.0, 0.9705);
  CHECK(bg.lower == doctest::Approx(0.9705));
  CHECK(bg.upper == doctest::Approx(1.4705));
  CHECK(bg.lower <= bg.upper);
}

TEST_CASE("sandwich at beta 0: identical estimates, pass verdict") {
  SandwichConfig cfg;
  cfg.dimension = 2;
  cfg.dist = DistributionSpec::gaussian(0.0, 1.0);
  cfg.beta = 0.0;
  cfg.n_max = 10;
  cfg.seeds = {1, 2, 3};
  cfg.tol = 0.15;
  const auto rep = sandwich_report(cfg);
  REQUIRE(rep.estimates.size() == 6);  // 3 seeds x 2 reference points
  for (const auto& e : rep.estimates) CHECK(e.slope == rep.estimates[0].slope);
  CHECK(rep.cross_seed_dispersion == 0.0);
  CHECK(rep.cross_ref_dispersion == 0.0);
  CHECK(rep.pass);
  CHECK(rep.bounds.lower == doctest::Approx(rep.bounds.upper));
}

TEST_CASE("sandwich in one dimension clusters at the lower bound") {
  SandwichConfig cfg;
  cfg.dimension = 1;
  cfg.dist = DistributionSpec::gaussian(0.0, 1.0);
  cfg.beta = 1.0;
  cfg.n_max = 1500;
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.h0_exact = 0.0;  // exact critical point in one dimension
  cfg.tol = 0.1;
  cfg.window_lo = 1;
  cfg.window_hi = 1500;
  const auto rep = sandwich_report(cfg);
  CHECK(rep.h0_is_exact);
  CHECK(rep.bounds.lower == doctest::Approx(0.0));      // h0 - beta*0
  CHECK(rep.bounds.upper == doctest::Approx(0.5));      // h0 + beta^2/2
  for (const auto& e : rep.estimates) CHECK(std::fabs(e.slope) < 0.1);
  CHECK(rep.pass);
}

TEST_CASE("sandwich requires at least two seeds") {
  SandwichConfig cfg;
  cfg.seeds = {1};
  CHECK_THROWS_AS(sandwich_report(cfg), std::invalid_argument);
}
