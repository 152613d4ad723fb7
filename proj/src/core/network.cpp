#include "probative/network.hpp"

#include <algorithm>
#include <sstream>

namespace probative {

std::optional<std::size_t> NodeDef::state_index(std::string_view state) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == state) return i;
  }
  return std::nullopt;
}

NetworkModel::NetworkModel(std::string name, std::vector<NodeDef> nodes,
                           std::vector<ConditionalTable> tables)
    : name_(std::move(name)), nodes_(std::move(nodes)), tables_(std::move(tables)) {}

std::optional<std::size_t> NetworkModel::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

const NodeDef* NetworkModel::find(std::string_view id) const {
  auto idx = index_of(id);
  return idx ? &nodes_[*idx] : nullptr;
}

const ConditionalTable* NetworkModel::table_for(std::string_view id) const {
  for (const auto& t : tables_) {
    if (t.node == id) return &t;
  }
  return nullptr;
}

const NodeDef& NetworkModel::node(std::string_view id) const {
  const NodeDef* def = find(id);
  if (def == nullptr) {
    throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'");
  }
  return *def;
}

NetworkModel NetworkModel::with_table(ConditionalTable table) const {
  std::vector<ConditionalTable> tables = tables_;
  auto it = std::find_if(tables.begin(), tables.end(),
                         [&](const ConditionalTable& t) { return t.node == table.node; });
  if (it == tables.end()) {
    throw Error(ErrorCode::UnknownNode, "no table for node '" + table.node + "'");
  }
  *it = std::move(table);
  return NetworkModel(name_, nodes_, std::move(tables));
}

EvidenceSet::EvidenceSet(std::initializer_list<Entry> entries) {
  for (const auto& [node, state] : entries) add(node, state);
}

void EvidenceSet::add(std::string node, std::string state) {
  if (contains(node)) {
    throw Error(ErrorCode::InvalidArgument,
                "evidence assigns node '" + node + "' more than once");
  }
  entries_.emplace_back(std::move(node), std::move(state));
}

bool EvidenceSet::contains(std::string_view node) const {
  return state_of(node).has_value();
}

std::optional<std::string_view> EvidenceSet::state_of(std::string_view node) const {
  for (const auto& [n, s] : entries_) {
    if (n == node) return std::string_view(s);
  }
  return std::nullopt;
}

std::string EvidenceSet::to_string() const {
  std::string out;
  for (const auto& [n, s] : entries_) {
    if (!out.empty()) out += ", ";
    out += n + "=" + s;
  }
  return out;
}

void ValidationReport::add(Finding finding) {
  if (finding.severity == Severity::Error) ok = false;
  findings.push_back(std::move(finding));
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding& f) { return f.code == code; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& f : findings) {
    out << (f.severity == Severity::Error ? "error" : "warning") << " " << f.code
        << " at " << f.location << ": " << f.message << "\n";
  }
  return out.str();
}

namespace {

std::string summarize(const ValidationReport& report) {
  for (const auto& f : report.findings) {
    if (f.severity == Severity::Error) {
      return "invalid model: " + f.code + " at " + f.location + ": " + f.message;
    }
  }
  return "invalid model";
}

}  // namespace

ModelValidationError::ModelValidationError(ValidationReport report)
    : Error(ErrorCode::InvalidModel, summarize(report)), report_(std::move(report)) {}

void require_valid(const NetworkModel& model) {
  ValidationReport report = validate_network(model);
  if (!report.ok) throw ModelValidationError(std::move(report));
}

std::size_t row_index(const NetworkModel& model, std::string_view node,
                      const ParentAssignment& parent_assignment) {
  const NodeDef& def = model.node(node);
  std::size_t row = 0;
  for (const auto& parent_id : def.parents) {
    const NodeDef& parent = model.node(parent_id);
    auto it = parent_assignment.find(parent_id);
    if (it == parent_assignment.end()) {
      throw Error(ErrorCode::MissingParent, "no state given for parent '" + parent_id +
                                                "' of node '" + def.id + "'");
    }
    auto s = parent.state_index(it->second);
    if (!s) {
      throw Error(ErrorCode::UnknownState,
                  "node '" + parent_id + "' has no state '" + it->second + "'");
    }
    row = row * parent.states.size() + *s;
  }
  return row;
}

double cpt_lookup(const NetworkModel& model, std::string_view node,
                  std::string_view state, const ParentAssignment& parent_assignment) {
  const NodeDef& def = model.node(node);
  auto s = def.state_index(state);
  if (!s) {
    throw Error(ErrorCode::UnknownState,
                "node '" + def.id + "' has no state '" + std::string(state) + "'");
  }
  std::size_t row = row_index(model, node, parent_assignment);
  const ConditionalTable* table = model.table_for(node);
  if (table == nullptr || row >= table->rows.size() || *s >= table->rows[row].size()) {
    throw Error(ErrorCode::InvalidModel,
                "table for node '" + def.id + "' does not cover the requested entry");
  }
  return table->rows[row][*s];
}

void check_evidence(const NetworkModel& model, const EvidenceSet& evidence) {
  for (const auto& [node, state] : evidence) {
    const NodeDef& def = model.node(node);
    if (!def.state_index(state)) {
      throw Error(ErrorCode::UnknownState,
                  "node '" + node + "' has no state '" + state + "'");
    }
  }
}

}  // namespace probative
