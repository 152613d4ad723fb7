#include "compiled.hpp"

namespace probative::detail {

double CompiledNetwork::local(std::size_t var, const std::vector<std::size_t>& states) const {
  std::size_t row = 0;
  for (auto p : parents[var]) row = row * cards[p] + states[p];
  return cpt[var][row * cards[var] + states[var]];
}

Factor CompiledNetwork::factor_for(std::size_t var) const {
  std::vector<std::size_t> scope = parents[var];
  scope.push_back(var);
  std::vector<std::size_t> fcards;
  fcards.reserve(scope.size());
  for (auto v : scope) fcards.push_back(cards[v]);
  return Factor(std::move(scope), std::move(fcards), cpt[var]);
}

CompiledNetwork compile(const NetworkModel& model) {
  require_valid(model);
  CompiledNetwork net;
  const auto& nodes = model.nodes();
  net.cards.reserve(nodes.size());
  for (const auto& n : nodes) net.cards.push_back(n.states.size());
  for (const auto& n : nodes) {
    std::vector<std::size_t> parents;
    for (const auto& p : n.parents) parents.push_back(*model.index_of(p));
    net.parents.push_back(std::move(parents));

    const ConditionalTable* table = model.table_for(n.id);
    std::vector<double> flat;
    flat.reserve(table->rows.size() * n.states.size());
    for (const auto& row : table->rows) flat.insert(flat.end(), row.begin(), row.end());
    net.cpt.push_back(std::move(flat));
  }
  return net;
}

std::vector<std::optional<std::size_t>> evidence_states(const NetworkModel& model,
                                                        const EvidenceSet& evidence) {
  check_evidence(model, evidence);
  std::vector<std::optional<std::size_t>> out(model.nodes().size());
  for (const auto& [node, state] : evidence) {
    auto i = *model.index_of(node);
    out[i] = model.nodes()[i].state_index(state);
  }
  return out;
}

}  // namespace probative::detail
