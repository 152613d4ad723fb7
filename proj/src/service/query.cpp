#include "probative/inference.hpp"
#include "probative/report_json.hpp"
#include "probative/service.hpp"

namespace probative::service {

using nlohmann::json;

namespace {

std::string expect_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

}  // namespace

QueryRequest parse_query_request(const json& body, const NetworkModel& model) {
  if (!body.is_object()) throw SchemaError("", "query must be an object");
  QueryRequest req;

  if (auto it = body.find("evidence"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) throw SchemaError("/evidence", "expected an object of node: state");
    for (const auto& [node, state] : it->items()) {
      req.evidence.add(node, expect_string(state, "/evidence/" + node));
    }
  }

  if (auto it = body.find("hypothesis"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) throw SchemaError("/hypothesis", "expected an object");
    const json& h = *it;
    auto node_it = h.find("node");
    if (node_it == h.end()) throw SchemaError("/hypothesis/node", "required member is missing");
    HypothesisQuery hyp = HypothesisQuery::for_node(model, expect_string(*node_it, "/hypothesis/node"));
    if (auto p = h.find("positive_state"); p != h.end() && !p->is_null()) {
      hyp.positive_state = expect_string(*p, "/hypothesis/positive_state");
    }
    if (auto n = h.find("negative"); n != h.end() && !n->is_null()) {
      std::string neg = expect_string(*n, "/hypothesis/negative");
      if (neg != "complement") hyp.negative_state = std::move(neg);
    }
    req.hypothesis = std::move(hyp);
  }

  if (auto it = body.find("prior_override"); it != body.end() && !it->is_null()) {
    if (!it->is_number()) throw SchemaError("/prior_override", "expected a number");
    req.prior_override = it->get<double>();
  }

  if (auto it = body.find("query_nodes"); it != body.end() && !it->is_null()) {
    if (!it->is_array()) throw SchemaError("/query_nodes", "expected an array of node ids");
    for (std::size_t i = 0; i < it->size(); ++i) {
      req.query_nodes.push_back(expect_string((*it)[i], "/query_nodes/" + std::to_string(i)));
    }
  }
  return req;
}

json evaluate_query(const NetworkModel& model, const QueryRequest& request) {
  check_evidence(model, request.evidence);
  for (const auto& id : request.query_nodes) model.node(id);

  if (request.prior_override && !request.hypothesis) {
    throw Error(ErrorCode::InvalidArgument, "prior_override needs a hypothesis");
  }
  const NetworkModel effective =
      request.prior_override
          ? with_prior_override(model, request.hypothesis->node,
                                request.hypothesis->positive_state, *request.prior_override)
          : model;

  std::vector<std::string> nodes = request.query_nodes;
  if (nodes.empty()) {
    for (const auto& n : model.nodes()) nodes.push_back(n.id);
  }

  json out;
  out["evidence"] = to_json(request.evidence);
  out["hypothesis"] = request.hypothesis ? to_json(*request.hypothesis) : json(nullptr);
  out["prior_override"] = to_json(request.prior_override);

  // The LR first: it raises the same impossible-evidence error as the
  // posteriors but also checks the hypothesis references.
  out["lr_report"] = request.hypothesis
                         ? to_json(lr_via_inference(model, request.evidence, *request.hypothesis,
                                                    request.prior_override))
                         : json(nullptr);

  json posteriors = json::array();
  json priors = json::array();
  double p_evidence = probability_of_evidence(effective, request.evidence);
  for (const auto& id : nodes) {
    posteriors.push_back(to_json(posterior(effective, request.evidence, id)));
    priors.push_back(to_json(posterior(effective, EvidenceSet{}, id)));
  }
  out["posteriors"] = std::move(posteriors);
  out["priors_used"] = std::move(priors);
  out["p_evidence"] = p_evidence;
  return out;
}

}  // namespace probative::service
