#include "compiled.hpp"
#include "probative/inference.hpp"

namespace probative {

double PosteriorReport::probability(std::string_view state) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == state) return distribution[i];
  }
  throw Error(ErrorCode::UnknownState,
              "node '" + query_node + "' has no state '" + std::string(state) + "'");
}

double joint_probability(const NetworkModel& model, const FullAssignment& assignment) {
  require_valid(model);
  for (const auto& [node, state] : assignment) {
    const NodeDef& def = model.node(node);
    if (!def.state_index(state)) {
      throw Error(ErrorCode::UnknownState, "node '" + node + "' has no state '" + state + "'");
    }
  }
  double p = 1.0;
  for (const auto& node : model.nodes()) {
    auto it = assignment.find(node.id);
    if (it == assignment.end()) {
      throw Error(ErrorCode::IncompleteAssignment,
                  "assignment does not cover node '" + node.id + "'");
    }
    ParentAssignment parents;
    for (const auto& parent : node.parents) parents.emplace(parent, assignment.at(parent));
    p *= cpt_lookup(model, node.id, it->second, parents);
  }
  return p;
}

PosteriorReport enumerate_posterior(const NetworkModel& model, const EvidenceSet& evidence,
                                    std::string_view query_node) {
  require_valid(model);
  const std::size_t query = model.index_of(query_node).value_or(model.nodes().size());
  if (query == model.nodes().size()) {
    throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(query_node) + "'");
  }
  const auto observed = detail::evidence_states(model, evidence);
  const auto& nodes = model.nodes();

  std::vector<std::size_t> free;
  std::vector<std::size_t> state(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (observed[i]) {
      state[i] = *observed[i];
    } else {
      free.push_back(i);
    }
  }

  // Walk every completion with an odometer over the unobserved nodes and
  // score each one with the chain rule directly (no factors involved).
  const auto net = detail::compile(model);
  std::vector<double> mass(nodes[query].states.size(), 0.0);
  for (;;) {
    double joint = 1.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) joint *= net.local(i, state);
    mass[state[query]] += joint;

    std::size_t k = free.size();
    while (k > 0) {
      std::size_t v = free[k - 1];
      if (++state[v] < nodes[v].states.size()) break;
      state[v] = 0;
      --k;
    }
    if (k == 0) break;
  }

  PosteriorReport report;
  report.query_node = nodes[query].id;
  report.states = nodes[query].states;
  report.evidence = evidence;
  double total = 0.0;
  for (double m : mass) total += m;
  report.p_evidence = total;
  if (!(total >= kImpossibleEvidenceThreshold)) {
    throw Error(ErrorCode::ImpossibleEvidence,
                "evidence {" + evidence.to_string() + "} has probability zero");
  }
  for (double& m : mass) m /= total;
  report.distribution = std::move(mass);
  return report;
}

}  // namespace probative
