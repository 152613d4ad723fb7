#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "probative/network.hpp"

namespace probative {

/// Below this the evidence is treated as impossible rather than risk dividing
/// by a denormal.
inline constexpr double kImpossibleEvidenceThreshold = 1e-300;

struct PosteriorReport {
  std::string query_node;
  std::vector<std::string> states;
  std::vector<double> distribution;  // aligned with states, sums to 1
  EvidenceSet evidence;
  double p_evidence = 1.0;

  /// Throws UnknownState.
  double probability(std::string_view state) const;
};

using FullAssignment = std::map<std::string, std::string, std::less<>>;

/// Chain rule: product over nodes of P(node | parents) at the given
/// assignment. Throws IncompleteAssignment when a node is missing.
double joint_probability(const NetworkModel& model, const FullAssignment& assignment);

/// Brute-force oracle: sums joint_probability over every completion of the
/// evidence. Exponential in the number of unobserved nodes; meant for tests
/// and small models.
PosteriorReport enumerate_posterior(const NetworkModel& model, const EvidenceSet& evidence,
                                    std::string_view query_node);

/// Exact posterior by variable elimination (min-fill order, ties broken by
/// declaration order). Throws ImpossibleEvidence when P(evidence) is zero.
PosteriorReport posterior(const NetworkModel& model, const EvidenceSet& evidence,
                          std::string_view query_node);

/// P(evidence) by variable elimination; 1 for empty evidence, 0 is a legal
/// answer.
double probability_of_evidence(const NetworkModel& model, const EvidenceSet& evidence);

/// posterior() for every node, in declaration order.
std::vector<PosteriorReport> all_posteriors(const NetworkModel& model,
                                            const EvidenceSet& evidence);

/// The variable elimination order that posterior() would use when keeping
/// `query_node`; exposed for tests and diagnostics.
std::vector<std::string> elimination_order(const NetworkModel& model,
                                           const EvidenceSet& evidence,
                                           std::string_view query_node);

}  // namespace probative
