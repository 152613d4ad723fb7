#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "probative/error.hpp"

namespace probative {

/// A discrete random variable. States are ordered; the order fixes the layout
/// of every probability vector that mentions the node.
struct NodeDef {
  std::string id;
  std::string label;
  std::vector<std::string> states;
  std::vector<std::string> parents;

  std::optional<std::size_t> state_index(std::string_view state) const;
};

/// P(node | parents). One row per parent configuration; configurations are
/// enumerated with the first declared parent most significant and each
/// parent's states in declared order. A parentless node has exactly one row.
struct ConditionalTable {
  std::string node;
  std::vector<std::vector<double>> rows;
};

/// Immutable discrete Bayesian network. Construction does not validate; use
/// validate_network() for a full report or require_valid() to gate inference.
class NetworkModel {
 public:
  NetworkModel() = default;
  NetworkModel(std::string name, std::vector<NodeDef> nodes,
               std::vector<ConditionalTable> tables);

  const std::string& name() const { return name_; }
  const std::vector<NodeDef>& nodes() const { return nodes_; }
  const std::vector<ConditionalTable>& tables() const { return tables_; }

  /// Position of the node in declaration order (first match on duplicates).
  std::optional<std::size_t> index_of(std::string_view id) const;
  const NodeDef* find(std::string_view id) const;
  const ConditionalTable* table_for(std::string_view id) const;

  /// Throws UnknownNode.
  const NodeDef& node(std::string_view id) const;

  /// Copy of this model with the given node's table replaced.
  NetworkModel with_table(ConditionalTable table) const;

 private:
  std::string name_;
  std::vector<NodeDef> nodes_;
  std::vector<ConditionalTable> tables_;
};

/// Hard evidence: node id -> observed state, one assignment per node,
/// remembered in insertion order.
class EvidenceSet {
 public:
  using Entry = std::pair<std::string, std::string>;

  EvidenceSet() = default;
  /// Throws InvalidArgument when a node appears twice.
  EvidenceSet(std::initializer_list<Entry> entries);

  /// Throws InvalidArgument if the node is already assigned.
  void add(std::string node, std::string state);

  bool contains(std::string_view node) const;
  std::optional<std::string_view> state_of(std::string_view node) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Human form, e.g. "E1=true, E2=false".
  std::string to_string() const;

 private:
  std::vector<Entry> entries_;
};

enum class Severity { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  std::string code;      // CYCLE, ROW_SUM, DANGLING_PARENT, ...
  std::string message;
  std::string location;  // JSON-pointer style, e.g. "/tables/E/rows/1"
};

struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;

  void add(Finding finding);
  bool has(std::string_view code) const;
  std::string to_string() const;
};

/// Raised when an operation needs a well-formed model and did not get one.
class ModelValidationError : public Error {
 public:
  explicit ModelValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

inline constexpr double kRowSumTolerance = 1e-9;

/// Reports every structural and numeric problem; never throws.
ValidationReport validate_network(const NetworkModel& model);

/// Throws ModelValidationError when validate_network() is not ok.
void require_valid(const NetworkModel& model);

/// Parents before children, ties broken by declaration order. Throws Cycle.
std::vector<std::string> topological_order(const NetworkModel& model);

using ParentAssignment = std::map<std::string, std::string, std::less<>>;

/// Row index of a parent configuration in the node's table. Extra keys in the
/// assignment are ignored. Throws UnknownNode, MissingParent, UnknownState.
std::size_t row_index(const NetworkModel& model, std::string_view node,
                      const ParentAssignment& parent_assignment);

/// P(node = state | parents = parent_assignment), read straight from the table.
double cpt_lookup(const NetworkModel& model, std::string_view node,
                  std::string_view state,
                  const ParentAssignment& parent_assignment);

/// Throws UnknownNode / UnknownState for references the model cannot resolve.
void check_evidence(const NetworkModel& model, const EvidenceSet& evidence);

}  // namespace probative
