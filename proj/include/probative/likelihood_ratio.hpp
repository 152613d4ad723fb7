#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probative/network.hpp"

namespace probative {

/// Hp is `positive_state` of `node`. Hd is either every other state
/// (the complement, which is what makes the LR a probative measure) or one
/// specific other state, which makes the pair non-exhaustive when the node has
/// more than two states.
struct HypothesisQuery {
  std::string node;
  std::string positive_state;
  std::optional<std::string> negative_state;  // nullopt: complement of Hp

  static HypothesisQuery complement(std::string node, std::string positive_state);
  static HypothesisQuery versus(std::string node, std::string positive_state,
                                std::string negative_state);

  /// Positive state defaults to the node's first declared state.
  static HypothesisQuery for_node(const NetworkModel& model, std::string_view node);

  bool is_complement() const { return !negative_state.has_value(); }
};

enum class ProbativeClass { FavoursHp, FavoursHd, Neutral };

std::string_view to_string(ProbativeClass c);

/// Relative band around 1 inside which an LR counts as neutral.
inline constexpr double kNeutralBand = 1e-9;

struct ReportWarning {
  std::string code;  // NON_EXHAUSTIVE, INFINITE
  std::string message;
};

/// LR values are plain doubles; +infinity is the INFINITE marker (P(E|Hd) = 0
/// while P(E|Hp) > 0). Odds use the same convention.
struct LikelihoodRatioReport {
  double lr = 1.0;
  std::optional<double> log10_lr;  // absent when lr is infinite or zero
  ProbativeClass probative_class = ProbativeClass::Neutral;

  std::optional<double> prior_odds;      // P(Hp) / P(Hd)
  std::optional<double> posterior_odds;  // P(Hp|E) / P(Hd|E)
  std::optional<double> prior_p;         // P(Hp)
  std::optional<double> posterior_p;     // P(Hp|E)

  bool exhaustive = true;
  std::vector<ReportWarning> warnings;

  bool infinite() const;
  bool has_warning(std::string_view code) const;
};

ProbativeClass probative_class(double lr);

/// posterior odds = prior odds x LR. Inputs must be finite and non-negative.
double odds_update(double prior_odds, double lr);

/// Product of independent LRs, combined in log space. Empty input gives 1.
/// A zero together with an infinite factor throws ZeroOverZero.
double combine_independent(std::span<const double> lrs);

/// LR from the evidence node's table alone. The evidence node must have the
/// hypothesis node as its only parent.
LikelihoodRatioReport lr_from_cpt(const NetworkModel& model, std::string_view evidence_node,
                                  std::string_view observed_state,
                                  const HypothesisQuery& hypothesis);

/// Product of localized ratios P(e_i | pa_i, Hp) / P(e_i | pa_i, Hd), valid
/// when every evidence node's parents are the hypothesis node or other
/// observed evidence. Anything else throws Structure; use lr_via_inference.
LikelihoodRatioReport combine_dependent(const NetworkModel& model, const EvidenceSet& evidence,
                                        const HypothesisQuery& hypothesis);

/// (posterior_p / posterior_d) x (prior_d / prior_p). Returns +infinity when
/// posterior_d = 0 < posterior_p; throws ZeroOverZero when the ratio is
/// undefined and InvalidArgument for inputs outside [0, 1].
double lr_recover(double posterior_p, double posterior_d, double prior_p, double prior_d);

/// Copy of the model whose parentless hypothesis node gets P(positive) =
/// prior. Other states share the remainder in proportion to their current
/// prior (uniformly if those are all zero). Throws PriorOverrideOnChild when
/// the node has parents.
NetworkModel with_prior_override(const NetworkModel& model, std::string_view node,
                                 std::string_view positive_state, double prior);

/// LR recovered from two inference runs (without and with the evidence).
/// With a prior override the hypothesis table is replaced before both runs.
LikelihoodRatioReport lr_via_inference(const NetworkModel& model, const EvidenceSet& evidence,
                                       const HypothesisQuery& hypothesis,
                                       std::optional<double> prior_override = std::nullopt);

/// P(evidence | node = state_p) / P(evidence | node = state_d), each computed
/// by conditioning on the state. Flags NON_EXHAUSTIVE when the node has more
/// than two states.
LikelihoodRatioReport state_pair_lr(const NetworkModel& model, const EvidenceSet& evidence,
                                    std::string_view node, std::string_view state_p,
                                    std::string_view state_d);

}  // namespace probative
