#include "sawq/distribution.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sawq/mixing.hpp"
#include "sawq/stats.hpp"

namespace sawq {

namespace {

void require_nonneg_beta(double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
}

// (1 - e^-x) / x with a stable small-x branch
double one_minus_exp_over(double x) {
  if (std::fabs(x) < 1e-5) return 1.0 - x / 2.0 + x * x / 6.0;
  return -std::expm1(-x) / x;
}

// d/dx [(1 - e^-x)/x] = (e^-x (1 + x) - 1) / x^2
double one_minus_exp_over_deriv(double x) {
  if (std::fabs(x) < 1e-5) return -0.5 + x / 3.0 - x * x / 8.0;
  return (std::exp(-x) * (1.0 + x) - 1.0) / (x * x);
}

std::map<std::string, double> parse_kv(const std::string& body) {
  std::map<std::string, double> kv;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("distribution parameter missing '=': " + item);
    std::string key = item.substr(0, eq);
    kv[key] = std::stod(item.substr(eq + 1));
  }
  return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("distribution spec missing parameter '" + key + "'");
  double v = it->second;
  kv.erase(it);
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

DistributionSpec DistributionSpec::constant(double c) { return {DistKind::constant, c, 0.0}; }

DistributionSpec DistributionSpec::bernoulli(double p, double a) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p outside [0,1]");
  return {DistKind::bernoulli, p, a};
}

DistributionSpec DistributionSpec::gaussian(double mean, double variance) {
  if (!(variance >= 0.0)) throw std::invalid_argument("gaussian: variance must be >= 0");
  return {DistKind::gaussian, mean, variance};
}

DistributionSpec DistributionSpec::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
  return {DistKind::exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform: lo must be <= hi");
  return {DistKind::uniform, lo, hi};
}

DistributionSpec DistributionSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) kv = parse_kv(text.substr(colon + 1));
  DistributionSpec out = constant(0.0);
  if (name == "constant") {
    out = constant(take(kv, "c"));
  } else if (name == "bernoulli") {
    double p = take(kv, "p");
    double a = take(kv, "a");
    out = bernoulli(p, a);
  } else if (name == "gaussian") {
    double m = take(kv, "m");
    double var = take(kv, "var");
    out = gaussian(m, var);
  } else if (name == "exponential") {
    out = exponential(take(kv, "rate"));
  } else if (name == "uniform") {
    double lo = take(kv, "lo");
    double hi = take(kv, "hi");
    out = uniform(lo, hi);
  } else {
    throw std::invalid_argument("unknown distribution kind: " + name);
  }
  if (!kv.empty()) throw std::invalid_argument("unexpected distribution parameter '" + kv.begin()->first + "'");
  return out;
}

std::string DistributionSpec::to_string() const {
  switch (kind_) {
    case DistKind::constant:
      return "constant:c=" + fmt(p1_);
    case DistKind::bernoulli:
      return "bernoulli:p=" + fmt(p1_) + ",a=" + fmt(p2_);
    case DistKind::gaussian:
      return "gaussian:m=" + fmt(p1_) + ",var=" + fmt(p2_);
    case DistKind::exponential:
      return "exponential:rate=" + fmt(p1_);
    case DistKind::uniform:
      return "uniform:lo=" + fmt(p1_) + ",hi=" + fmt(p2_);
  }
  return {};
}

double DistributionSpec::mean() const {
  switch (kind_) {
    case DistKind::constant:
      return p1_;
    case DistKind::bernoulli:
      return p1_ * p2_;
    case DistKind::gaussian:
      return p1_;
    case DistKind::exponential:
      return 1.0 / p1_;
    case DistKind::uniform:
      return 0.5 * (p1_ + p2_);
  }
  return 0.0;
}

double DistributionSpec::stddev() const {
  switch (kind_) {
    case DistKind::constant:
      return 0.0;
    case DistKind::bernoulli:
      return std::fabs(p2_) * std::sqrt(p1_ * (1.0 - p1_));
    case DistKind::gaussian:
      return std::sqrt(p2_);
    case DistKind::exponential:
      return 1.0 / p1_;
    case DistKind::uniform:
      return (p2_ - p1_) / std::sqrt(12.0);
  }
  return 0.0;
}

bool DistributionSpec::degenerate() const {
  switch (kind_) {
    case DistKind::constant:
      return true;
    case DistKind::bernoulli:
      return p1_ == 0.0 || p1_ == 1.0 || p2_ == 0.0;
    case DistKind::gaussian:
      return p2_ == 0.0;
    case DistKind::exponential:
      return false;
    case DistKind::uniform:
      return p1_ == p2_;
  }
  return false;
}

double DistributionSpec::log_laplace(double beta) const {
  require_nonneg_beta(beta);
  switch (kind_) {
    case DistKind::constant:
      return -beta * p1_;
    case DistKind::bernoulli:
      return std::log(1.0 - p1_ + p1_ * std::exp(-beta * p2_));
    case DistKind::gaussian:
      return -beta * p1_ + 0.5 * beta * beta * p2_;
    case DistKind::exponential:
      return std::log(p1_) - std::log(p1_ + beta);
    case DistKind::uniform:
      return -beta * p1_ + std::log(one_minus_exp_over(beta * (p2_ - p1_)));
  }
  return 0.0;
}

double DistributionSpec::laplace(double beta) const { return std::exp(log_laplace(beta)); }

double DistributionSpec::laplace_derivative(double beta) const {
  require_nonneg_beta(beta);
  switch (kind_) {
    case DistKind::constant:
      return -p1_ * std::exp(-beta * p1_);
    case DistKind::bernoulli:
      return -p1_ * p2_ * std::exp(-beta * p2_);
    case DistKind::gaussian:
      return (-p1_ + beta * p2_) * laplace(beta);
    case DistKind::exponential:
      return -p1_ / ((p1_ + beta) * (p1_ + beta));
    case DistKind::uniform: {
      // lambda = e^{-beta lo} g(beta w), w = hi - lo
      const double w = p2_ - p1_;
      const double x = beta * w;
      const double e = std::exp(-beta * p1_);
      return -p1_ * e * one_minus_exp_over(x) + w * e * one_minus_exp_over_deriv(x);
    }
  }
  return 0.0;
}

double DistributionSpec::sample(uint64_t word) const {
  const double u = unit_open(word);
  switch (kind_) {
    case DistKind::constant:
      return p1_;
    case DistKind::bernoulli:
      return u < p1_ ? p2_ : 0.0;
    case DistKind::gaussian:
      return p1_ + std::sqrt(p2_) * normal_quantile(u);
    case DistKind::exponential:
      return -std::log1p(-u) / p1_;
    case DistKind::uniform:
      return p1_ + u * (p2_ - p1_);
  }
  return 0.0;
}

double jensen_lower_bound(const DistributionSpec& dist, double beta, double h0) {
  require_nonneg_beta(beta);
  return h0 - beta * dist.mean();
}

double annealed_critical_point(const DistributionSpec& dist, double beta, double h0) {
  const double value = h0 + dist.log_laplace(beta);
  // Jensen: log lambda >= -beta E[X]; a violation here is an algebra bug.
  const double bound = jensen_lower_bound(dist, beta, h0);
  if (value < bound - 1e-9 * (1.0 + std::fabs(bound)))
    throw std::logic_error("annealed_critical_point: Jensen bound violated");
  return value;
}

}  // namespace sawq
