#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sawq {

// Inverse standard normal CDF (Wichura's AS 241, double precision branch).
// Pure arithmetic plus log/sqrt, so sampling stays reproducible without
// depending on std distribution internals. p must lie in (0, 1).
double normal_quantile(double p);

// Ordinary least squares y ~ a + b*x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;  // sqrt(SSR / n)
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Streaming mean / unbiased variance over a deterministic sample order.
struct MomentAccumulator {
  uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double variance() const;             // unbiased; 0 for n < 2
  double std_error() const;            // sqrt(variance / n)
  double second_moment() const { return n ? sum_sq / static_cast<double>(n) : 0.0; }
};

// log(sum exp(v)) over a small vector, shifted by the max term.
double log_sum_exp(std::span<const double> v);

}  // namespace sawq
