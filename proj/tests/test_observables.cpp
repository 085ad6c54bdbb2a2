#include "sawq/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sawq/stats.hpp"

using namespace sawq;

namespace {

EnumerationConfig make_cfg(int d, int n_max) {
  EnumerationConfig cfg;
  cfg.dimension = d;
  cfg.n_max = n_max;
  return cfg;
}

// 1D closed form: exactly one walk to each side, so the weighted count at
// length n is exp(-beta S+(n)) + exp(-beta S-(n)) with S the running sums of
// conductances to the right and left of x.
std::vector<double> one_dim_oracle(const Environment& env, double beta, Coord x, int n_max) {
  std::vector<double> out(static_cast<size_t>(n_max) + 1, 1.0);
  double s_right = 0.0, s_left = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const Coord right_base = x + static_cast<Coord>(n - 1);
    const Coord left_base = x - static_cast<Coord>(n);
    Point rb({std::vector<Coord>{right_base}});
    Point lb({std::vector<Coord>{left_base}});
    s_right += env.conductance_at(std::span<const Coord>(rb.c), 0);
    s_left += env.conductance_at(std::span<const Coord>(lb.c), 0);
    out[static_cast<size_t>(n)] = std::exp(-beta * s_right) + std::exp(-beta * s_left);
  }
  return out;
}

}  // namespace

TEST_CASE("beta = 0 reduces quenched counts to c(n) exactly") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 5, 2);
  const auto q = quenched_counts(env, 0.0, Point::origin(2), make_cfg(2, 8));
  const auto c = count_walks(2, 8);
  for (int n = 0; n <= 8; ++n) CHECK(q.counts[n] == static_cast<double>(c[n]));
}

TEST_CASE("constant environments shift every walk by the same weight") {
  const double cval = 0.8, beta = 0.7;
  Environment env(DistributionSpec::constant(cval), 1, 2);
  const auto q = quenched_counts(env, beta, Point::origin(2), make_cfg(2, 7));
  const auto c = count_walks(2, 7);
  for (int n = 1; n <= 7; ++n) {
    const double expect = std::exp(-beta * cval * n) * static_cast<double>(c[n]);
    CHECK(q.counts[n] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("one-dimensional quenched counts match the two-arm closed form") {
  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Environment env(DistributionSpec::gaussian(0.0, 1.0), seed, 1);
    const double beta = 0.9;
    const Coord x0 = 4;
    const auto q =
        quenched_counts(env, beta, Point({std::vector<Coord>{x0}}), make_cfg(1, 200));
    const auto oracle = one_dim_oracle(env, beta, x0, 200);
    for (int n = 0; n <= 200; ++n)
      CHECK(q.counts[n] == doctest::Approx(oracle[static_cast<size_t>(n)]).epsilon(1e-10));
  }
}

TEST_CASE("susceptibility: geometric series in one dimension at beta 0") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 1, 1);
  const auto s =
      quenched_susceptibility(env, std::log(2.0), 0.0, Point::origin(1), make_cfg(1, 40));
  // 1 + 2 sum_{n>=1} 2^-n = 3, truncation error 2^(1-n)
  CHECK(s.partial_sum == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(s.partial_sum < 3.0);
  CHECK(s.tail_ratio > 0.0);
  CHECK(s.tail_ratio < 1e-11);
}

TEST_CASE("susceptibility: huge h leaves only the empty walk") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 3, 2);
  const auto s = quenched_susceptibility(env, 50.0, 0.5, Point::origin(2), make_cfg(2, 10));
  CHECK(s.partial_sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.tail_ratio < 1e-100);
  CHECK(s.partial_sum >= 1.0);
}

TEST_CASE("susceptibility is strictly decreasing in h") {
  Environment env(DistributionSpec::uniform(-1.0, 2.0), 11, 2);
  const auto cfg = make_cfg(2, 8);
  double prev = std::numeric_limits<double>::infinity();
  for (double h : {0.2, 0.6, 1.0, 1.4, 1.8}) {
    const double v = quenched_susceptibility(env, h, 0.5, Point::origin(2), cfg).partial_sum;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("endpoint partition of the susceptibility is exact") {
  for (double beta : {0.0, 0.6}) {
    Environment env(DistributionSpec::gaussian(0.0, 1.0), 17, 2);
    const auto cfg = make_cfg(2, 8);
    const double h = 1.1;
    const auto field = two_point_field(env, h, beta, Point::origin(2), cfg);
    const auto chi = quenched_susceptibility(env, h, beta, Point::origin(2), cfg);
    CHECK(field.total == chi.partial_sum);  // bitwise: same exact accumulation
    double naive = 0.0;
    for (const auto& [p, v] : field.values) naive += v;
    CHECK(naive == doctest::Approx(chi.partial_sum).epsilon(1e-12));
  }
}

TEST_CASE("two-point basics") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 23, 1);
  const auto cfg = make_cfg(1, 12);

  // the unique 1D walk gives e^{-h|y|} at beta = 0
  const double h = 0.9;
  for (Coord y : {-5, -1, 2, 7}) {
    const double g = two_point(env, h, 0.0, Point::origin(1), Point({std::vector<Coord>{y}}), cfg);
    CHECK(g == doctest::Approx(std::exp(-h * std::abs(y))).epsilon(1e-12));
  }

  // x == y: empty walk only as h grows
  const double self_large_h =
      two_point(env, 60.0, 0.0, Point::origin(1), Point::origin(1), cfg);
  CHECK(self_large_h == doctest::Approx(1.0).epsilon(1e-15));
  const double self =
      two_point(env, 0.5, 0.0, Point::origin(1), Point::origin(1), cfg);
  CHECK(self >= 1.0);
}

TEST_CASE("two-point reversal symmetry") {
  Environment env(DistributionSpec::exponential(1.0), 31, 2);
  const auto cfg = make_cfg(2, 8);
  const Point a = Point::origin(2);
  const Point b({std::vector<Coord>{2, 1}});
  const double ab = two_point(env, 1.0, 0.7, a, b, cfg);
  const double ba = two_point(env, 1.0, 0.7, b, a, cfg);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-11));
  CHECK(ab > 0.0);

  // beyond reach: exactly zero
  CHECK(two_point(env, 1.0, 0.7, a, Point({std::vector<Coord>{9, 0}}), cfg) == 0.0);
}

TEST_CASE("good walks: degenerate and huge-delta limits") {
  Environment env(DistributionSpec::constant(1.3), 2, 2);
  const auto cfg = make_cfg(2, 6);
  const auto g = good_walk_counts(env, Point::origin(2), 0.5, cfg);
  const auto c = count_walks(2, 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(g.total[n] == c[n]);
    CHECK(g.good[n] == c[n]);  // centered conductance is identically zero
  }

  Environment genv(DistributionSpec::gaussian(0.0, 1.0), 2, 2);
  const auto wide = good_walk_counts(genv, Point::origin(2), 1e9, cfg);
  for (int n = 1; n <= 6; ++n) CHECK(wide.good[n] == wide.total[n]);

  const auto narrow = good_walk_counts(genv, Point::origin(2), 0.5, cfg);
  for (int n = 1; n <= 6; ++n) {
    CHECK(narrow.good[n] <= narrow.total[n]);
    CHECK(narrow.total[n] == c[n]);
  }
  CHECK_THROWS_AS(good_walk_counts(genv, Point::origin(2), 0.0, cfg), std::domain_error);
}

TEST_CASE("good-walk fraction grows with length (seed average)") {
  // the per-walk average of centered conductances concentrates at rate 1/n
  const auto cfg = make_cfg(2, 10);
  double frac4 = 0.0, frac10 = 0.0;
  const int seeds = 40;
  for (int s = 1; s <= seeds; ++s) {
    Environment env(DistributionSpec::gaussian(0.0, 1.0), static_cast<uint64_t>(s), 2);
    const auto g = good_walk_counts(env, Point::origin(2), 0.5, cfg);
    frac4 += static_cast<double>(g.good[4]) / static_cast<double>(g.total[4]);
    frac10 += static_cast<double>(g.good[10]) / static_cast<double>(g.total[10]);
  }
  frac4 /= seeds;
  frac10 /= seeds;
  CHECK(frac10 > frac4);
  CHECK(frac10 > 0.5);
}

TEST_CASE("annealed counts") {
  const auto dist = DistributionSpec::gaussian(0.0, 1.0);
  const auto a0 = annealed_counts(dist, 0.0, 2, make_cfg(2, 6));
  const auto c = count_walks(2, 6);
  for (int n = 0; n <= 6; ++n) CHECK(a0[n] == static_cast<double>(c[n]));

  const auto a1 = annealed_counts(dist, 1.0, 2, make_cfg(2, 2));
  CHECK(a1[2] == doctest::Approx(std::exp(1.0) * 12.0).epsilon(1e-12));  // lambda^2 c(2)

  // constant law: annealed equals quenched for the constant environment
  const auto cdist = DistributionSpec::constant(0.6);
  Environment cenv(cdist, 8, 2);
  const auto ann = annealed_counts(cdist, 0.8, 2, make_cfg(2, 6));
  const auto que = quenched_counts(cenv, 0.8, Point::origin(2), make_cfg(2, 6));
  for (int n = 0; n <= 6; ++n) CHECK(ann[n] == doctest::Approx(que.counts[n]).epsilon(1e-12));
}

TEST_CASE("annealing consistency: seed mean of quenched counts matches lambda^n c(n)") {
  const auto dist = DistributionSpec::gaussian(0.0, 1.0);
  const double beta = 0.5;
  const auto cfg = make_cfg(2, 6);
  const auto expect = annealed_counts(dist, beta, 2, cfg);

  const int seeds = 200;
  std::vector<MomentAccumulator> acc(7);
  for (int s = 1; s <= seeds; ++s) {
    Environment env(dist, static_cast<uint64_t>(s), 2);
    const auto q = quenched_counts(env, beta, Point::origin(2), cfg);
    for (int n = 0; n <= 6; ++n) acc[static_cast<size_t>(n)].add(q.counts[n]);
  }
  for (int n = 1; n <= 6; ++n) {
    const auto& m = acc[static_cast<size_t>(n)];
    CHECK(std::fabs(m.mean() - expect[n]) <= 4.0 * m.std_error());
  }
}

TEST_CASE("default good-walk delta") {
  CHECK(default_good_walk_delta(DistributionSpec::gaussian(0.0, 4.0)) == doctest::Approx(0.5));
  CHECK(default_good_walk_delta(DistributionSpec::constant(3.0)) == doctest::Approx(1.0));
  CHECK(default_good_walk_delta(DistributionSpec::constant(0.0)) == doctest::Approx(0.25));
}

TEST_CASE("beta < 0 is rejected") {
  Environment env(DistributionSpec::gaussian(0.0, 1.0), 1, 2);
  CHECK_THROWS_AS(quenched_counts(env, -0.5, Point::origin(2), make_cfg(2, 4)),
                  std::domain_error);
  CHECK_THROWS_AS(annealed_counts(DistributionSpec::constant(1.0), -1.0, 2, make_cfg(2, 4)),
                  std::domain_error);
}
