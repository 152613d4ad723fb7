#pragma once

// HTTP facade over the library. Api::handle is transport-free so it can be
// tested directly; HttpServer binds it to cpp-httplib.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "probative/likelihood_ratio.hpp"
#include "probative/model_dsl.hpp"

namespace probative::service {

inline constexpr std::string_view kApiPrefix = "/api/v1";

struct StoredModel {
  std::string id;
  ModelDocument document;
  bool fixture = false;
};

enum class RemoveResult { Removed, NotFound, ReadOnly };

/// Concurrent readers, exclusive writers. Entries are immutable once stored;
/// readers keep a shared_ptr snapshot and need no lock while evaluating.
class ModelStore {
 public:
  /// Registers every bundled fixture under its own name, read-only.
  void preload_fixtures();

  std::vector<std::shared_ptr<const StoredModel>> list() const;
  std::shared_ptr<const StoredModel> get(std::string_view id) const;

  /// Returns the generated id ("m1", "m2", ...).
  std::string add(ModelDocument document);
  RemoveResult remove(std::string_view id);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const StoredModel>, std::less<>> models_;
  std::vector<std::string> order_;
  std::uint64_t next_id_ = 1;
};

struct QueryRequest {
  EvidenceSet evidence;
  std::optional<HypothesisQuery> hypothesis;
  std::optional<double> prior_override;
  std::vector<std::string> query_nodes;  // empty: every node
};

/// Body shape:
///   {"evidence": {"E": "match"},
///    "hypothesis": {"node": "H", "positive_state": "true", "negative": "complement"},
///    "prior_override": 0.001,
///    "query_nodes": ["H"]}
/// Every member is optional; positive_state defaults to the first state and
/// negative to "complement". Throws SchemaError on a wrong shape.
QueryRequest parse_query_request(const nlohmann::json& body, const NetworkModel& model);

/// QueryResponse:
///   {"posteriors": [PosteriorReport...], "priors_used": [...],
///    "p_evidence": x, "lr_report": LikelihoodRatioReport | null,
///    "evidence": [...], "hypothesis": {...} | null, "prior_override": x | null}
/// Throws library errors (ImpossibleEvidence, UnknownNode, ...).
nlohmann::json evaluate_query(const NetworkModel& model, const QueryRequest& request);

struct HttpResponse {
  int status = 200;
  std::string body;
};

class Api {
 public:
  explicit Api(std::shared_ptr<ModelStore> store);

  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body) const;

  ModelStore& store() const { return *store_; }

 private:
  std::shared_ptr<ModelStore> store_;
};

class HttpServer {
 public:
  explicit HttpServer(const Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop(). Returns false if the address cannot be bound.
  bool listen(const std::string& host, int port);

  /// Binds an ephemeral port and returns it (or -1); then call
  /// listen_after_bind() from a worker thread.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();

  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace probative::service
