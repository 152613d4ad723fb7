#include "probative/report_json.hpp"
#include "probative/service.hpp"

namespace probative::service {

using nlohmann::json;

namespace {

HttpResponse reply(int status, const json& body) { return {status, body.dump()}; }

HttpResponse error_reply(int status, std::string_view code, const std::string& message) {
  return reply(status, {{"error", {{"code", code}, {"message", message}}}});
}

// 409 for evidence the model rules out, 422 for references or arguments the
// model cannot satisfy.
HttpResponse library_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ImpossibleEvidence:
      return error_reply(409, to_string(e.code()), e.what());
    case ErrorCode::Schema:
      return error_reply(400, to_string(e.code()), e.what());
    default:
      return error_reply(422, to_string(e.code()), e.what());
  }
}

std::vector<std::string_view> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    auto slash = path.find('/');
    parts.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

std::optional<json> parse_body(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

Api::Api(std::shared_ptr<ModelStore> store) : store_(std::move(store)) {}

HttpResponse Api::handle(std::string_view method, std::string_view path,
                         std::string_view body) const {
  const auto parts = split_path(path);
  if (parts.size() < 3 || parts[0] != "api" || parts[1] != "v1" || parts[2] != "models") {
    return error_reply(404, "NOT_FOUND", "no such endpoint");
  }

  if (parts.size() == 3) {
    if (method == "GET") {
      json list = json::array();
      for (const auto& m : store_->list()) {
        list.push_back({{"id", m->id}, {"name", m->document.model.name()}, {"fixture", m->fixture}});
      }
      return reply(200, list);
    }
    if (method == "POST") {
      auto parsed = parse_body(body);
      if (!parsed) return error_reply(400, "PARSE", "request body is not valid JSON");
      try {
        ModelDocument doc = document_from_json(*parsed);
        return reply(201, {{"id", store_->add(std::move(doc))}});
      } catch (const ModelValidationError& e) {
        return reply(422, to_json(e.report()));
      } catch (const SchemaError& e) {
        ValidationReport report;
        report.add({Severity::Error, "SCHEMA", e.what(), e.path()});
        return reply(422, to_json(report));
      }
    }
    return error_reply(405, "METHOD_NOT_ALLOWED", "unsupported method");
  }

  const std::string id(parts[3]);
  if (parts.size() == 4) {
    if (method == "GET") {
      auto m = store_->get(id);
      if (!m) return error_reply(404, "NOT_FOUND", "no model with id '" + id + "'");
      return reply(200, to_json(m->document));
    }
    if (method == "DELETE") {
      switch (store_->remove(id)) {
        case RemoveResult::Removed:
          return {204, ""};
        case RemoveResult::NotFound:
          return error_reply(404, "NOT_FOUND", "no model with id '" + id + "'");
        case RemoveResult::ReadOnly:
          return error_reply(403, "READ_ONLY", "bundled fixtures cannot be deleted");
      }
    }
    return error_reply(405, "METHOD_NOT_ALLOWED", "unsupported method");
  }

  if (parts.size() == 5 && parts[4] == "query") {
    if (method != "POST") return error_reply(405, "METHOD_NOT_ALLOWED", "unsupported method");
    auto m = store_->get(id);
    if (!m) return error_reply(404, "NOT_FOUND", "no model with id '" + id + "'");
    auto parsed = parse_body(body.empty() ? std::string_view("{}") : body);
    if (!parsed) return error_reply(400, "PARSE", "request body is not valid JSON");
    try {
      QueryRequest req = parse_query_request(*parsed, m->document.model);
      json out = evaluate_query(m->document.model, req);
      out["model"] = m->id;
      return reply(200, out);
    } catch (const Error& e) {
      return library_error(e);
    }
  }
  return error_reply(404, "NOT_FOUND", "no such endpoint");
}

}  // namespace probative::service
