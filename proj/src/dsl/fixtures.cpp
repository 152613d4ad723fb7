#include "fixture_data.hpp"
#include "probative/model_dsl.hpp"

namespace probative {

namespace {

const detail::EmbeddedFixture* find_fixture(std::string_view name) {
  for (const auto& f : detail::embedded_fixtures()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const detail::EmbeddedFixture& require_fixture(std::string_view name) {
  const auto* f = find_fixture(name);
  if (f == nullptr) {
    throw Error(ErrorCode::UnknownFixture, "no bundled fixture named '" + std::string(name) + "'");
  }
  return *f;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& f : detail::embedded_fixtures()) names.emplace_back(f.name);
  return names;
}

std::string_view fixture_source(std::string_view name) { return require_fixture(name).source; }

ModelDocument load_fixture(std::string_view name) {
  const auto& f = require_fixture(name);
  ModelDocument doc = parse_text(f.source);
  if (!f.metadata.empty()) doc.metadata = nlohmann::json::parse(f.metadata);
  doc.metadata["fixture"] = std::string(f.name);
  return doc;
}

}  // namespace probative
