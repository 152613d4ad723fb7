#include <charconv>
#include <cctype>
#include <cmath>

#include "probative/model_dsl.hpp"

namespace probative {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

void require_identifier(std::string_view s, std::string_view what) {
  if (!is_identifier(s)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " '" + std::string(s) +
                                                "' cannot be written in the text format");
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string number(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "probability cannot be written in the text format");
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string problist(const std::vector<double>& row) {
  std::string out = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += number(row[i]);
  }
  return out + "]";
}

}  // namespace

std::string serialize_text(const NetworkModel& model) {
  require_identifier(model.name(), "network name");
  std::string out = "network " + model.name() + " {\n";
  for (const auto& node : model.nodes()) {
    require_identifier(node.id, "node id");
    out += "  node " + node.id;
    if (!node.label.empty()) out += " " + quote(node.label);
    out += " {\n    states: ";
    for (std::size_t i = 0; i < node.states.size(); ++i) {
      require_identifier(node.states[i], "state");
      out += (i ? ", " : "") + node.states[i];
    }
    out += ";\n";
    if (!node.parents.empty()) {
      out += "    parents: ";
      for (std::size_t i = 0; i < node.parents.size(); ++i) {
        out += (i ? ", " : "") + node.parents[i];
      }
      out += ";\n";
    }
    out += "    cpt {\n";
    const ConditionalTable* table = model.table_for(node.id);
    if (table == nullptr) {
      throw Error(ErrorCode::InvalidModel, "node '" + node.id + "' has no table");
    }
    std::vector<const NodeDef*> parents;
    for (const auto& p : node.parents) parents.push_back(&model.node(p));
    for (std::size_t r = 0; r < table->rows.size(); ++r) {
      out += "      ";
      if (!parents.empty()) {
        std::vector<std::string> parts(parents.size());
        std::size_t rem = r;
        for (std::size_t k = parents.size(); k-- > 0;) {
          const auto card = parents[k]->states.size();
          parts[k] = parents[k]->id + "=" + parents[k]->states[rem % card];
          rem /= card;
        }
        for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ", " : "") + parts[k];
        out += ": ";
      }
      out += problist(table->rows[r]) + ";\n";
    }
    out += "    }\n  }\n";
  }
  out += "}\n";
  return out;
}

bool structurally_equal(const NetworkModel& a, const NetworkModel& b, double tolerance) {
  if (a.name() != b.name() || a.nodes().size() != b.nodes().size()) return false;
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    const auto& x = a.nodes()[i];
    const auto& y = b.nodes()[i];
    if (x.id != y.id || x.label != y.label || x.states != y.states || x.parents != y.parents) {
      return false;
    }
    const auto* tx = a.table_for(x.id);
    const auto* ty = b.table_for(y.id);
    if ((tx == nullptr) != (ty == nullptr)) return false;
    if (tx == nullptr) continue;
    if (tx->rows.size() != ty->rows.size()) return false;
    for (std::size_t r = 0; r < tx->rows.size(); ++r) {
      if (tx->rows[r].size() != ty->rows[r].size()) return false;
      for (std::size_t s = 0; s < tx->rows[r].size(); ++s) {
        if (!(std::abs(tx->rows[r][s] - ty->rows[r][s]) <= tolerance)) return false;
      }
    }
  }
  return true;
}

}  // namespace probative
