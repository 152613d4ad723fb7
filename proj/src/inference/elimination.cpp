#include <algorithm>
#include <limits>
#include <set>

#include "compiled.hpp"
#include "probative/inference.hpp"

namespace probative {

namespace {

using detail::CompiledNetwork;
using Observed = std::vector<std::optional<std::size_t>>;

std::vector<Factor> reduced_factors(const CompiledNetwork& net, const Observed& observed) {
  std::vector<Factor> factors;
  factors.reserve(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) {
    Factor f = net.factor_for(v);
    for (auto var : std::vector<std::size_t>(f.scope())) {
      if (observed[var]) f = f.reduce(var, *observed[var]);
    }
    factors.push_back(std::move(f));
  }
  return factors;
}

// Greedy min-fill over the interaction graph of the reduced factors. Ties go
// to the variable declared first.
std::vector<std::size_t> min_fill_order(std::size_t n, const std::vector<Factor>& factors,
                                        const std::vector<bool>& eliminate) {
  std::vector<std::set<std::size_t>> adj(n);
  for (const auto& f : factors) {
    for (auto a : f.scope()) {
      for (auto b : f.scope()) {
        if (a != b) adj[a].insert(b);
      }
    }
  }

  std::vector<bool> pending = eliminate;
  std::vector<std::size_t> order;
  for (;;) {
    std::size_t best = n;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (!pending[v]) continue;
      std::size_t fill = 0;
      for (auto it = adj[v].begin(); it != adj[v].end(); ++it) {
        for (auto jt = std::next(it); jt != adj[v].end(); ++jt) {
          if (!adj[*it].count(*jt)) ++fill;
        }
      }
      if (fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    if (best == n) break;

    for (auto a : adj[best]) {
      for (auto b : adj[best]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(best);
    }
    adj[best].clear();
    pending[best] = false;
    order.push_back(best);
  }
  return order;
}

// Eliminates every unobserved variable except `keep` and returns the product
// of what is left: a factor over `keep`, or a scalar when keep is nullopt or
// observed.
Factor eliminate_all_but(const CompiledNetwork& net, const Observed& observed,
                         std::optional<std::size_t> keep,
                         std::vector<std::size_t>* order_out = nullptr) {
  std::vector<Factor> factors = reduced_factors(net, observed);
  std::vector<bool> eliminate(net.size(), false);
  for (std::size_t v = 0; v < net.size(); ++v) {
    eliminate[v] = !observed[v] && (!keep || v != *keep);
  }
  const auto order = min_fill_order(net.size(), factors, eliminate);
  if (order_out != nullptr) *order_out = order;

  for (auto var : order) {
    Factor joined;
    std::vector<Factor> rest;
    rest.reserve(factors.size());
    for (auto& f : factors) {
      if (f.contains(var)) {
        joined = joined.product(f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(joined.sum_out(var));
    factors = std::move(rest);
  }

  Factor result;
  for (const auto& f : factors) result = result.product(f);
  return result;
}

std::size_t require_node(const NetworkModel& model, std::string_view id) {
  auto idx = model.index_of(id);
  if (!idx) throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'");
  return *idx;
}

PosteriorReport run_posterior(const NetworkModel& model, const CompiledNetwork& net,
                              const EvidenceSet& evidence, const Observed& observed,
                              std::size_t query) {
  const NodeDef& node = model.nodes()[query];
  PosteriorReport report;
  report.query_node = node.id;
  report.states = node.states;
  report.evidence = evidence;

  Factor result = eliminate_all_but(net, observed, query);
  const double total = result.total();
  if (!(total >= kImpossibleEvidenceThreshold)) {
    throw Error(ErrorCode::ImpossibleEvidence,
                "evidence {" + evidence.to_string() + "} has probability zero");
  }
  report.p_evidence = total;
  if (observed[query]) {
    report.distribution.assign(node.states.size(), 0.0);
    report.distribution[*observed[query]] = 1.0;
  } else {
    report.distribution = result.values();
    for (double& p : report.distribution) p /= total;
  }
  return report;
}

}  // namespace

PosteriorReport posterior(const NetworkModel& model, const EvidenceSet& evidence,
                          std::string_view query_node) {
  const auto net = detail::compile(model);
  const auto query = require_node(model, query_node);
  const auto observed = detail::evidence_states(model, evidence);
  return run_posterior(model, net, evidence, observed, query);
}

double probability_of_evidence(const NetworkModel& model, const EvidenceSet& evidence) {
  const auto net = detail::compile(model);
  const auto observed = detail::evidence_states(model, evidence);
  if (evidence.empty()) return 1.0;
  return eliminate_all_but(net, observed, std::nullopt).total();
}

std::vector<PosteriorReport> all_posteriors(const NetworkModel& model,
                                            const EvidenceSet& evidence) {
  const auto net = detail::compile(model);
  const auto observed = detail::evidence_states(model, evidence);
  std::vector<PosteriorReport> out;
  out.reserve(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) {
    out.push_back(run_posterior(model, net, evidence, observed, v));
  }
  return out;
}

std::vector<std::string> elimination_order(const NetworkModel& model,
                                           const EvidenceSet& evidence,
                                           std::string_view query_node) {
  const auto net = detail::compile(model);
  const auto query = require_node(model, query_node);
  const auto observed = detail::evidence_states(model, evidence);
  std::vector<std::size_t> order;
  eliminate_all_but(net, observed, query, &order);
  std::vector<std::string> ids;
  for (auto v : order) ids.push_back(model.nodes()[v].id);
  return ids;
}

}  // namespace probative
