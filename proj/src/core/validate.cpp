#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

#include "probative/network.hpp"

namespace probative {

namespace {

std::string node_loc(std::size_t i) { return "/nodes/" + std::to_string(i); }

std::string row_loc(const std::string& node, std::size_t r) {
  return "/tables/" + node + "/rows/" + std::to_string(r);
}

// Kahn's algorithm over declaration indices. Parent edges that do not resolve
// are skipped so a dangling reference does not masquerade as a cycle.
// Returns the order found; nodes missing from it sit on or behind a cycle.
std::vector<std::size_t> kahn(const NetworkModel& model) {
  const auto& nodes = model.nodes();
  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<std::size_t> in_degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> seen;
    for (const auto& p : nodes[i].parents) {
      auto pi = model.index_of(p);
      if (!pi || *pi == i || !seen.insert(*pi).second) continue;
      children[*pi].push_back(i);
      ++in_degree[i];
    }
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_degree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t c : children[i]) {
      if (--in_degree[c] == 0) ready.push(c);
    }
  }
  return order;
}

void check_nodes(const NetworkModel& model, ValidationReport& report) {
  const auto& nodes = model.nodes();
  std::unordered_map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeDef& node = nodes[i];
    if (node.id.empty()) {
      report.add({Severity::Error, "EMPTY_ID", "node has an empty id", node_loc(i)});
    }
    if (auto [it, inserted] = first_seen.emplace(node.id, i); !inserted) {
      report.add({Severity::Error, "DUPLICATE_NODE",
                  "node id '" + node.id + "' already declared at index " +
                      std::to_string(it->second),
                  node_loc(i)});
    }
    if (node.states.size() < 2) {
      report.add({Severity::Error, "TOO_FEW_STATES",
                  "node '" + node.id + "' declares " + std::to_string(node.states.size()) +
                      " state(s); at least 2 are required",
                  node_loc(i) + "/states"});
    }
    std::set<std::string> states;
    for (const auto& s : node.states) {
      if (!states.insert(s).second) {
        report.add({Severity::Error, "DUPLICATE_STATE",
                    "node '" + node.id + "' declares state '" + s + "' twice",
                    node_loc(i) + "/states"});
      }
    }
    std::set<std::string> parents;
    for (const auto& p : node.parents) {
      if (p == node.id) {
        report.add({Severity::Error, "SELF_PARENT",
                    "node '" + node.id + "' lists itself as a parent",
                    node_loc(i) + "/parents"});
      } else if (!model.find(p)) {
        report.add({Severity::Error, "DANGLING_PARENT",
                    "node '" + node.id + "' references unknown parent '" + p + "'",
                    node_loc(i) + "/parents"});
      }
      if (!parents.insert(p).second) {
        report.add({Severity::Error, "DUPLICATE_PARENT",
                    "node '" + node.id + "' lists parent '" + p + "' twice",
                    node_loc(i) + "/parents"});
      }
    }
  }
}

void check_cycles(const NetworkModel& model, ValidationReport& report) {
  auto order = kahn(model);
  if (order.size() == model.nodes().size()) return;
  std::vector<bool> placed(model.nodes().size(), false);
  for (auto i : order) placed[i] = true;
  std::string stuck;
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (placed[i]) continue;
    if (!stuck.empty()) stuck += ", ";
    stuck += model.nodes()[i].id;
  }
  report.add({Severity::Error, "CYCLE",
              "graph is not acyclic; nodes on or downstream of a cycle: " + stuck,
              "/nodes"});
}

void check_rows(const NodeDef& node, const ConditionalTable& table,
                std::optional<std::size_t> expected_rows, ValidationReport& report) {
  if (expected_rows && table.rows.size() != *expected_rows) {
    report.add({Severity::Error, "ROW_COUNT",
                "table for '" + node.id + "' has " + std::to_string(table.rows.size()) +
                    " rows; its parents require " + std::to_string(*expected_rows),
                "/tables/" + node.id + "/rows"});
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != node.states.size()) {
      report.add({Severity::Error, "ROW_WIDTH",
                  "row " + std::to_string(r) + " of '" + node.id + "' has " +
                      std::to_string(row.size()) + " entries for " +
                      std::to_string(node.states.size()) + " states",
                  row_loc(node.id, r)});
      continue;
    }
    bool in_range = true;
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0)) in_range = false;
      sum += p;
    }
    if (!in_range) {
      report.add({Severity::Error, "PROB_RANGE",
                  "row " + std::to_string(r) + " of '" + node.id +
                      "' has an entry outside [0, 1]",
                  row_loc(node.id, r)});
    } else if (std::abs(sum - 1.0) > kRowSumTolerance) {
      report.add({Severity::Error, "ROW_SUM",
                  "row " + std::to_string(r) + " of '" + node.id + "' sums to " +
                      std::to_string(sum),
                  row_loc(node.id, r)});
    }
  }
}

void check_tables(const NetworkModel& model, ValidationReport& report) {
  std::set<std::string> seen;
  for (const auto& table : model.tables()) {
    if (!model.find(table.node)) {
      report.add({Severity::Error, "ORPHAN_TABLE",
                  "table for unknown node '" + table.node + "'", "/tables/" + table.node});
      continue;
    }
    if (!seen.insert(table.node).second) {
      report.add({Severity::Error, "DUPLICATE_TABLE",
                  "node '" + table.node + "' has more than one table",
                  "/tables/" + table.node});
    }
  }
  for (const auto& node : model.nodes()) {
    const ConditionalTable* table = model.table_for(node.id);
    if (table == nullptr) {
      report.add({Severity::Error, "MISSING_TABLE", "node '" + node.id + "' has no table",
                  "/tables/" + node.id});
      continue;
    }
    std::optional<std::size_t> expected = 1;
    for (const auto& p : node.parents) {
      const NodeDef* parent = model.find(p);
      if (parent == nullptr) {
        expected.reset();
        break;
      }
      *expected *= parent->states.size();
    }
    check_rows(node, *table, expected, report);
  }
}

}  // namespace

ValidationReport validate_network(const NetworkModel& model) {
  ValidationReport report;
  check_nodes(model, report);
  check_cycles(model, report);
  check_tables(model, report);
  return report;
}

std::vector<std::string> topological_order(const NetworkModel& model) {
  for (const auto& node : model.nodes()) {
    for (const auto& p : node.parents) {
      if (!model.find(p)) {
        throw Error(ErrorCode::UnknownNode,
                    "node '" + node.id + "' references unknown parent '" + p + "'");
      }
      if (p == node.id) {
        throw Error(ErrorCode::Cycle, "node '" + node.id + "' is its own parent");
      }
    }
  }
  auto order = kahn(model);
  if (order.size() != model.nodes().size()) {
    throw Error(ErrorCode::Cycle, "graph contains a directed cycle");
  }
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (auto i : order) ids.push_back(model.nodes()[i].id);
  return ids;
}

}  // namespace probative
