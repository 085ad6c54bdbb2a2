#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace sawq {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, inconclusive, pass_trivial, exploratory };

std::string verdict_name(Verdict v);

struct Statistic {
  std::string label;
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact quantities
};

// Shared result shape for every diagnostic: parameter echo, labelled
// statistics with Monte Carlo errors, a verdict against the stated
// tolerance, and one entry per violating instance.
struct DiagnosticsReport {
  std::string name;
  Json inputs;
  std::vector<Statistic> statistics;
  Verdict verdict = Verdict::inconclusive;
  double tolerance = 0.0;
  std::vector<Json> failures;

  bool failed() const { return verdict == Verdict::fail; }
  Json to_json() const;
};

Json point_to_json(const std::vector<int32_t>& coords);

}  // namespace sawq
