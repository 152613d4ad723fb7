#pragma once

// Index-based view of a validated NetworkModel, shared by the enumeration
// oracle and the elimination engine.

#include <cstddef>
#include <optional>
#include <vector>

#include "probative/factor.hpp"
#include "probative/network.hpp"

namespace probative::detail {

struct CompiledNetwork {
  std::vector<std::size_t> cards;
  std::vector<std::vector<std::size_t>> parents;
  std::vector<std::vector<double>> cpt;  // row-major (parent config, state)

  std::size_t size() const { return cards.size(); }

  /// P(var = states[var] | parents = states[parents]).
  double local(std::size_t var, const std::vector<std::size_t>& states) const;

  Factor factor_for(std::size_t var) const;
};

/// Validates the model and flattens it. Throws ModelValidationError.
CompiledNetwork compile(const NetworkModel& model);

/// Evidence as per-node observed state index (nullopt when unobserved).
/// Throws UnknownNode / UnknownState.
std::vector<std::optional<std::size_t>> evidence_states(const NetworkModel& model,
                                                        const EvidenceSet& evidence);

}  // namespace probative::detail
