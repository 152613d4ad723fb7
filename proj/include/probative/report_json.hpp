#pragma once

// JSON shapes shared by the CLI's machine output and the HTTP service.
// Infinite values are written as the string "INFINITE" since JSON has no
// representation for them.

#include <nlohmann/json.hpp>

#include "probative/inference.hpp"
#include "probative/likelihood_ratio.hpp"
#include "probative/network.hpp"

namespace probative {

nlohmann::json number_or_marker(double v);
nlohmann::json to_json(const std::optional<double>& v);

nlohmann::json to_json(const HypothesisQuery& h);
nlohmann::json to_json(const LikelihoodRatioReport& r);
nlohmann::json to_json(const PosteriorReport& r);
nlohmann::json to_json(const EvidenceSet& e);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace probative
