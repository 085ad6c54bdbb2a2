#include "sawq/superaccumulator.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sawq/mixing.hpp"

using sawq::SplitMix64;
using sawq::Superaccumulator;

TEST_CASE("integer sums are exact regardless of magnitude mix") {
  Superaccumulator a;
  a.add(1e308);
  a.add(1.0);
  a.add(-1e308);
  CHECK(a.to_double() == 1.0);  // a plain double sum loses the 1

  Superaccumulator b;
  for (int i = 0; i < 1000; ++i) {
    b.add(0.1);
    b.add(-0.1);
  }
  CHECK(b.to_double() == 0.0);
  CHECK(b.sign() == 0);
}

TEST_CASE("small integer arithmetic matches exactly") {
  SplitMix64 rng(42);
  // sums of random int32 values, checked against an exact 128-bit tally
  Superaccumulator acc;
  __int128 exact = 0;
  for (int i = 0; i < 20000; ++i) {
    const int64_t v = static_cast<int64_t>(static_cast<int32_t>(rng.next()));
    acc.add(static_cast<double>(v));
    exact += v;
  }
  CHECK(acc.to_double() == static_cast<double>(static_cast<long double>(exact)));
}

TEST_CASE("merge is grouping independent bit for bit") {
  SplitMix64 rng(7);
  std::vector<double> xs;
  for (int i = 0; i < 5000; ++i) {
    // mixed magnitudes and signs
    const double m = rng.unit() - 0.5;
    const int e = static_cast<int>(rng.below(600)) - 300;
    xs.push_back(std::ldexp(m, e));
  }

  Superaccumulator whole;
  for (double x : xs) whole.add(x);

  // split into 7 chunks, merge in a scrambled order
  const size_t k = 7;
  std::vector<Superaccumulator> parts(k);
  for (size_t i = 0; i < xs.size(); ++i) parts[i % k].add(xs[i]);
  Superaccumulator merged;
  const size_t order[] = {3, 0, 6, 2, 5, 1, 4};
  for (size_t i : order) merged.merge(parts[i]);

  CHECK(merged.value_equal(whole));
  CHECK(merged.to_double() == whole.to_double());
  CHECK(merged.log_abs() == whole.log_abs());
}

TEST_CASE("to_double rounds to nearest even") {
  // 2^53 + 1 is not representable; ties round to even mantissa
  Superaccumulator a;
  a.add(std::ldexp(1.0, 53));
  a.add(1.0);
  CHECK(a.to_double() == std::ldexp(1.0, 53));  // tie, rounds down to even

  Superaccumulator b;
  b.add(std::ldexp(1.0, 53));
  b.add(1.0);
  b.add(std::ldexp(1.0, -60));  // sticky bit breaks the tie upward
  CHECK(b.to_double() == std::ldexp(1.0, 53) + 2.0);

  Superaccumulator c;
  c.add(std::ldexp(1.0, 53));
  c.add(3.0);
  CHECK(c.to_double() == std::ldexp(1.0, 53) + 4.0);  // tie to even, upward
}

TEST_CASE("add_scaled and add_product insert exact values") {
  Superaccumulator a;
  a.add_scaled(1.5, 10);  // 1536
  a.add_scaled(1.0, -3);  // 0.125
  CHECK(a.to_double() == 1536.125);

  Superaccumulator b;
  b.add_product(0.5, 1000001);
  Superaccumulator b2;
  for (int i = 0; i < 1000001; ++i) b2.add(0.5);
  CHECK(b.value_equal(b2));

  // product linearity: e*(a+b) == e*a + e*b exactly
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double e = rng.unit();
    const uint64_t u = rng.below(1 << 20), v = rng.below(1 << 20);
    Superaccumulator lhs, rhs;
    lhs.add_product(e, u + v);
    rhs.add_product(e, u);
    rhs.add_product(e, v);
    CHECK(lhs.value_equal(rhs));
  }
}

TEST_CASE("add_exp covers magnitudes far outside double range") {
  Superaccumulator a;
  a.add_exp(-2000.0);
  CHECK(a.to_double() == 0.0);  // below the double range
  CHECK(a.sign() == 1);
  CHECK(a.log_abs() == doctest::Approx(-2000.0).epsilon(1e-12));

  Superaccumulator b;
  b.add_exp(std::log(2.0));
  CHECK(b.to_double() == doctest::Approx(2.0).epsilon(1e-14));

  // additivity at extreme scale: e^-2000 + e^-2001
  Superaccumulator c;
  c.add_exp(-2000.0);
  c.add_exp(-2001.0);
  const double expect = -2000.0 + std::log1p(std::exp(-1.0));
  CHECK(c.log_abs() == doctest::Approx(expect).epsilon(1e-12));

  Superaccumulator d;
  d.add_exp(-std::numeric_limits<double>::infinity());
  CHECK(d.sign() == 0);

  Superaccumulator e;
  e.add_exp(2000.0);
  CHECK(std::isinf(e.to_double()));
  CHECK(e.log_abs() == doctest::Approx(2000.0).epsilon(1e-12));
}

TEST_CASE("negative totals and sign transitions") {
  Superaccumulator a;
  a.add(-3.25);
  CHECK(a.sign() == -1);
  CHECK(a.to_double() == -3.25);
  CHECK(a.log_abs() == doctest::Approx(std::log(3.25)));
  a.add(3.0);
  CHECK(a.to_double() == -0.25);
  a.add(0.5);
  CHECK(a.to_double() == 0.25);
  a.add(-0.25);
  CHECK(a.sign() == 0);
  CHECK(a.to_double() == 0.0);
}

TEST_CASE("merging random accumulators equals adding all values") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    Superaccumulator whole, left, right;
    for (int i = 0; i < 400; ++i) {
      const double x = std::ldexp(rng.unit() - 0.5, static_cast<int>(rng.below(200)) - 100);
      whole.add(x);
      (i % 2 ? left : right).add(x);
    }
    left.merge(right);
    CHECK(left.value_equal(whole));
  }
}

TEST_CASE("value_equal ignores window placement") {
  Superaccumulator a, b;
  a.add(1.0);
  b.add(std::ldexp(1.0, -300));
  b.add(1.0);
  b.add(-std::ldexp(1.0, -300));  // widened window, same value
  CHECK(a.value_equal(b));
}
