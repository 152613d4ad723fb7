#include "probative/report_json.hpp"

#include <cmath>

namespace probative {

using nlohmann::json;

json number_or_marker(double v) {
  if (std::isinf(v)) return v > 0 ? "INFINITE" : "-INFINITE";
  return v;
}

json to_json(const std::optional<double>& v) {
  return v ? number_or_marker(*v) : json(nullptr);
}

json to_json(const HypothesisQuery& h) {
  return {{"node", h.node},
          {"positive_state", h.positive_state},
          {"negative", h.negative_state ? *h.negative_state : "complement"}};
}

json to_json(const LikelihoodRatioReport& r) {
  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
  return {
      {"lr", number_or_marker(r.lr)},
      {"log10_lr", to_json(r.log10_lr)},
      {"probative_class", std::string(to_string(r.probative_class))},
      {"prior_odds", to_json(r.prior_odds)},
      {"posterior_odds", to_json(r.posterior_odds)},
      {"prior", to_json(r.prior_p)},
      {"posterior", to_json(r.posterior_p)},
      {"exhaustive", r.exhaustive},
      {"warnings", warnings},
  };
}

json to_json(const PosteriorReport& r) {
  return {{"node", r.query_node},
          {"states", r.states},
          {"distribution", r.distribution},
          {"p_evidence", r.p_evidence}};
}

json to_json(const EvidenceSet& e) {
  json out = json::array();
  for (const auto& [node, state] : e) out.push_back({{"node", node}, {"state", state}});
  return out;
}

json to_json(const ValidationReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings) {
    findings.push_back({{"severity", f.severity == Severity::Error ? "error" : "warning"},
                        {"code", f.code},
                        {"message", f.message},
                        {"location", f.location}});
  }
  return {{"ok", r.ok}, {"findings", findings}};
}

}  // namespace probative
