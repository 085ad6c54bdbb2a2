#pragma once

#include <cstdint>
#include <string>

namespace sawq {

enum class DistKind { constant, bernoulli, gaussian, exponential, uniform };

// A bond-conductance law with closed-form mean, Laplace transform
// lambda(beta) = E[exp(-beta X)] and its beta-derivative. Every supported
// kind keeps lambda finite for all beta >= 0; negative values of X are
// allowed (gaussian, uniform with lo < 0).
class DistributionSpec {
 public:
  static DistributionSpec constant(double c);
  static DistributionSpec bernoulli(double p, double a);  // value a w.p. p, else 0
  static DistributionSpec gaussian(double mean, double variance);
  static DistributionSpec exponential(double rate);
  static DistributionSpec uniform(double lo, double hi);

  // Config-string form, e.g. "gaussian:m=0,var=1", "bernoulli:p=0.5,a=1",
  // "constant:c=1", "exponential:rate=2", "uniform:lo=0,hi=1".
  static DistributionSpec parse(const std::string& text);
  std::string to_string() const;

  DistKind kind() const { return kind_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  double mean() const;
  double stddev() const;
  bool degenerate() const;  // almost surely a single value

  // beta < 0 throws std::domain_error in all three.
  double laplace(double beta) const;
  double log_laplace(double beta) const;
  double laplace_derivative(double beta) const;  // d lambda / d beta = -E[X exp(-beta X)]

  // Quantile/sampling transform: one stream word in, one conductance out.
  double sample(uint64_t word) const;

  bool operator==(const DistributionSpec&) const = default;

 private:
  DistributionSpec(DistKind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}
  DistKind kind_;
  double p1_;
  double p2_;
};

// h0 + log lambda(beta): the annealed critical point relative to the
// homogeneous one. Checked against its Jensen lower bound h0 - beta*E[X].
double annealed_critical_point(const DistributionSpec& dist, double beta, double h0);
double jensen_lower_bound(const DistributionSpec& dist, double beta, double h0);

}  // namespace sawq
