#include "sawq/report.hpp"

namespace sawq {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::pass_trivial:
      return "pass-trivial";
    case Verdict::exploratory:
      return "inconclusive-exploratory";
  }
  return "unknown";
}

Json DiagnosticsReport::to_json() const {
  Json j;
  j["name"] = name;
  j["inputs"] = inputs;
  Json stats = Json::array();
  for (const auto& s : statistics) {
    Json e;
    e["label"] = s.label;
    e["value"] = s.value;
    e["std_error"] = s.std_error;
    stats.push_back(e);
  }
  j["statistics"] = stats;
  j["verdict"] = verdict_name(verdict);
  j["tolerance"] = tolerance;
  j["failures"] = failures;
  return j;
}

Json point_to_json(const std::vector<int32_t>& coords) {
  Json j = Json::array();
  for (int32_t c : coords) j.push_back(c);
  return j;
}

}  // namespace sawq
