#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "probative/network.hpp"

namespace probative {

inline constexpr int kFormatVersion = 1;

/// A model plus the free-form notes that travel with it (description,
/// provenance of table entries, named scenarios).
struct ModelDocument {
  int format_version = kFormatVersion;
  NetworkModel model;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Syntax error in `.bn` source (or malformed JSON text). Line and column are
/// 1-based and point at the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string expected, std::string found,
             const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
  std::string found_;
};

/// A JSON document that parses but does not have the expected shape.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses the `.bn` text format:
///
///   model      := "network" IDENT "{" node+ "}"
///   node       := "node" IDENT string? "{" "states" ":" IDENT ("," IDENT)+ ";"
///                 ("parents" ":" IDENT ("," IDENT)* ";")? "cpt" "{" row+ "}" "}"
///   row        := (assignment ("," assignment)* ":")? problist ";"
///   assignment := IDENT "=" IDENT
///   problist   := "[" NUMBER ("," NUMBER)* "]"
///
/// NUMBER is a decimal or a fraction such as 1/1001. Every parent
/// configuration must be listed. Throws ParseError for syntax and
/// ModelValidationError when the model is ill-formed.
ModelDocument parse_text(std::string_view source);

/// Canonical `.bn` text. Rows are written in canonical configuration order
/// with shortest round-trip decimals. Throws InvalidArgument when an id or
/// state is not a valid identifier.
std::string serialize_text(const NetworkModel& model);

/// JSON document format. Probabilities may be numbers or strings holding a
/// decimal or a fraction. Throws ParseError, SchemaError (with a JSON-pointer
/// path) or ModelValidationError.
ModelDocument parse_json(std::string_view document);
ModelDocument document_from_json(const nlohmann::json& root);

nlohmann::json to_json(const ModelDocument& doc);
std::string serialize_json(const ModelDocument& doc);

/// Decimal ("0.25", "1e-4") or fraction ("1/1001"). Throws InvalidArgument.
double parse_probability(std::string_view text);

/// Reads a model file, choosing the format by extension (.bn or .json).
ModelDocument load_model_file(const std::filesystem::path& path);

/// Bundled example models.
std::vector<std::string> fixture_names();

/// Throws UnknownFixture.
ModelDocument load_fixture(std::string_view name);

/// The bundled `.bn` source of a fixture. Throws UnknownFixture.
std::string_view fixture_source(std::string_view name);

/// Same names, states, parents and table shapes; probabilities within `tolerance`.
bool structurally_equal(const NetworkModel& a, const NetworkModel& b, double tolerance = 1e-12);

}  // namespace probative
