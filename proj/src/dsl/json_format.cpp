#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "probative/model_dsl.hpp"

namespace probative {

using nlohmann::json;

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(ErrorCode::Schema, path + ": " + message), path_(std::move(path)) {}

namespace {

std::optional<double> decimal(std::string_view s) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "required member is missing");
  return *it;
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> strings_at(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string_at(v[i], ptr(path, i)));
  return out;
}

double probability_at(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_probability(v.get<std::string>());
    } catch (const Error& e) {
      throw SchemaError(path, e.what());
    }
  }
  throw SchemaError(path, "expected a number or a fraction string");
}

std::size_t byte_line(std::string_view text, std::size_t offset, std::size_t& column) {
  std::size_t line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return line;
}

}  // namespace

double parse_probability(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (auto v = decimal(text)) return *v;
  } else {
    auto num = decimal(text.substr(0, slash));
    auto den = decimal(text.substr(slash + 1));
    if (num && den && *den != 0.0) return *num / *den;
  }
  throw Error(ErrorCode::InvalidArgument,
              "'" + std::string(text) + "' is not a decimal or a fraction");
}

ModelDocument document_from_json(const json& root) {
  if (!root.is_object()) throw SchemaError("", "document must be an object");
  const json& version = member(root, "", "format_version");
  if (!version.is_number_integer()) throw SchemaError("/format_version", "expected an integer");
  if (version.get<int>() != kFormatVersion) {
    throw SchemaError("/format_version",
                      "unsupported format version " + std::to_string(version.get<int>()));
  }

  const json& model = member(root, "", "model");
  if (!model.is_object()) throw SchemaError("/model", "expected an object");
  std::string name = string_at(member(model, "/model", "name"), "/model/name");

  const json& jnodes = member(model, "/model", "nodes");
  if (!jnodes.is_array()) throw SchemaError("/model/nodes", "expected an array");
  std::vector<NodeDef> nodes;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string p = ptr("/model/nodes", i);
    const json& jn = jnodes[i];
    if (!jn.is_object()) throw SchemaError(p, "expected an object");
    NodeDef def;
    def.id = string_at(member(jn, p, "id"), p + "/id");
    if (auto it = jn.find("label"); it != jn.end()) def.label = string_at(*it, p + "/label");
    def.states = strings_at(member(jn, p, "states"), p + "/states");
    if (auto it = jn.find("parents"); it != jn.end()) {
      def.parents = strings_at(*it, p + "/parents");
    }
    nodes.push_back(std::move(def));
  }

  const json& jtables = member(model, "/model", "tables");
  if (!jtables.is_array()) throw SchemaError("/model/tables", "expected an array");
  std::vector<ConditionalTable> tables;
  for (std::size_t i = 0; i < jtables.size(); ++i) {
    const std::string p = ptr("/model/tables", i);
    const json& jt = jtables[i];
    if (!jt.is_object()) throw SchemaError(p, "expected an object");
    ConditionalTable table;
    table.node = string_at(member(jt, p, "node"), p + "/node");
    const json& rows = member(jt, p, "rows");
    if (!rows.is_array()) throw SchemaError(p + "/rows", "expected an array of rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string rp = ptr(p + "/rows", r);
      if (!rows[r].is_array()) throw SchemaError(rp, "expected an array of probabilities");
      std::vector<double> row;
      for (std::size_t s = 0; s < rows[r].size(); ++s) {
        row.push_back(probability_at(rows[r][s], ptr(rp, s)));
      }
      table.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(table));
  }

  ModelDocument doc;
  doc.model = NetworkModel(std::move(name), std::move(nodes), std::move(tables));
  if (auto it = root.find("metadata"); it != root.end()) {
    if (!it->is_object()) throw SchemaError("/metadata", "expected an object");
    doc.metadata = *it;
  }
  require_valid(doc.model);
  return doc;
}

ModelDocument parse_json(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    std::size_t column = 1;
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const std::size_t line = byte_line(document, offset, column);
    throw ParseError(line, column, "JSON value", "malformed JSON", e.what());
  }
  return document_from_json(root);
}

json to_json(const ModelDocument& doc) {
  json nodes = json::array();
  for (const auto& n : doc.model.nodes()) {
    json jn = {{"id", n.id}, {"states", n.states}, {"parents", n.parents}};
    if (!n.label.empty()) jn["label"] = n.label;
    nodes.push_back(std::move(jn));
  }
  json tables = json::array();
  for (const auto& t : doc.model.tables()) {
    tables.push_back({{"node", t.node}, {"rows", t.rows}});
  }
  return {
      {"format_version", doc.format_version},
      {"model", {{"name", doc.model.name()}, {"nodes", nodes}, {"tables", tables}}},
      {"metadata", doc.metadata.is_null() ? json::object() : doc.metadata},
  };
}

std::string serialize_json(const ModelDocument& doc) { return to_json(doc).dump(2) + "\n"; }

ModelDocument load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::InvalidArgument, "cannot read model file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string ext = path.extension().string();
  if (ext == ".json") return parse_json(buf.str());
  if (ext == ".bn") return parse_text(buf.str());
  throw Error(ErrorCode::InvalidArgument,
              "unrecognised model file extension '" + ext + "' (expected .bn or .json)");
}

}  // namespace probative
