#pragma once

// Fixture sources are compiled in; the table is generated at configure time
// from fixtures/*.bn and the matching *.meta.json files.

#include <span>
#include <string_view>

namespace probative::detail {

struct EmbeddedFixture {
  std::string_view name;
  std::string_view source;
  std::string_view metadata;  // JSON object text, may be empty
};

std::span<const EmbeddedFixture> embedded_fixtures();

}  // namespace probative::detail
