#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>

#include "probative/model_dsl.hpp"

namespace probative {

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected,
                       std::string found, const std::string& message)
    : Error(ErrorCode::Parse,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok { Ident, String, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, decoded string, number lexeme, or punctuation
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::String: return "string \"" + t.text + "\"";
    case Tok::Number: return "number " + t.text;
    case Tok::Punct: return "'" + t.text + "'";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;

    const char c = src_[pos_];
    if (ident_start(c)) {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() && ident_char(src_[pos_])) t.text += advance();
      return t;
    }
    if (digit(c) || (c == '.' && pos_ + 1 < src_.size() && digit(src_[pos_ + 1]))) {
      t.kind = Tok::Number;
      t.text = number();
      return t;
    }
    if (c == '"') {
      t.kind = Tok::String;
      t.text = string_literal(t);
      return t;
    }
    static constexpr std::string_view kPunct = "{}[]:;,=/";
    if (kPunct.find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, advance());
      return t;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? "'" + std::string(1, c) + "'"
                            : "byte 0x" + hex(static_cast<unsigned char>(c));
    throw ParseError(t.line, t.column, "token", shown, "unexpected character " + shown);
  }

 private:
  static std::string hex(unsigned char c) {
    static constexpr char kDigits[] = "0123456789abcdef";
    return {kDigits[c >> 4], kDigits[c & 0xf]};
  }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  // digits ("." digits)? ([eE] [+-]? digits)?  or  "." digits (...)
  std::string number() {
    std::string out;
    while (pos_ < src_.size() && digit(src_[pos_])) out += advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      out += advance();
      if (pos_ >= src_.size() || !digit(src_[pos_])) fail_number("digit after '.'");
      while (pos_ < src_.size() && digit(src_[pos_])) out += advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      out += advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) out += advance();
      if (pos_ >= src_.size() || !digit(src_[pos_])) fail_number("exponent digits");
      while (pos_ < src_.size() && digit(src_[pos_])) out += advance();
    }
    if (pos_ < src_.size() && ident_char(src_[pos_])) fail_number("end of number");
    return out;
  }

  [[noreturn]] void fail_number(const std::string& expected) {
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'"
                                           : std::string("end of input");
    throw ParseError(line_, col_, expected, found,
                     "malformed number: expected " + expected + ", found " + found);
  }

  std::string string_literal(const Token& start) {
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError(start.line, start.column, "'\"'",
                         pos_ >= src_.size() ? "end of input" : "end of line",
                         "unterminated string");
      }
      const char c = advance();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= src_.size()) continue;  // reported as unterminated above
      const char e = advance();
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default:
          throw ParseError(line_, col_ - 1, "escape sequence", "'\\" + std::string(1, e) + "'",
                           "unknown escape sequence '\\" + std::string(1, e) + "'");
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct RawRow {
  std::vector<std::pair<Token, Token>> assignments;  // (parent, state)
  std::vector<double> probs;
  std::size_t line = 0;
  bool bare = true;
};

struct RawNode {
  NodeDef def;
  std::vector<RawRow> rows;
  std::size_t line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  std::pair<std::string, std::vector<RawNode>> model() {
    keyword("network");
    std::string name = ident("network name");
    punct("{");
    std::vector<RawNode> nodes;
    nodes.push_back(node());
    while (is_keyword("node")) nodes.push_back(node());
    punct("}");
    if (tok_.kind != Tok::End) fail("end of input");
    return {std::move(name), std::move(nodes)};
  }

 private:
  RawNode node() {
    RawNode n;
    n.line = tok_.line;
    keyword("node");
    n.def.id = ident("node id");
    if (tok_.kind == Tok::String) {
      n.def.label = tok_.text;
      shift();
    }
    punct("{");
    keyword("states");
    punct(":");
    n.def.states.push_back(ident("state name"));
    punct(",");
    n.def.states.push_back(ident("state name"));
    while (accept(",")) n.def.states.push_back(ident("state name"));
    punct(";");
    if (is_keyword("parents")) {
      shift();
      punct(":");
      n.def.parents.push_back(ident("parent id"));
      while (accept(",")) n.def.parents.push_back(ident("parent id"));
      punct(";");
    }
    keyword("cpt");
    punct("{");
    n.rows.push_back(row());
    while (!is_punct("}")) n.rows.push_back(row());
    punct("}");
    punct("}");
    return n;
  }

  RawRow row() {
    RawRow r;
    r.line = tok_.line;
    if (!is_punct("[")) {
      r.bare = false;
      r.assignments.push_back(assignment());
      while (accept(",")) r.assignments.push_back(assignment());
      punct(":");
    }
    punct("[");
    r.probs.push_back(number());
    while (accept(",")) r.probs.push_back(number());
    punct("]");
    punct(";");
    return r;
  }

  std::pair<Token, Token> assignment() {
    if (tok_.kind != Tok::Ident) fail("parent assignment or '['");
    Token parent = tok_;
    shift();
    punct("=");
    if (tok_.kind != Tok::Ident) fail("state name");
    Token state = tok_;
    shift();
    return {std::move(parent), std::move(state)};
  }

  double number() {
    if (tok_.kind != Tok::Number) fail("number");
    const Token num = tok_;
    shift();
    double value = to_double(num);
    if (is_punct("/")) {
      shift();
      if (tok_.kind != Tok::Number) fail("number");
      const Token den = tok_;
      shift();
      const double d = to_double(den);
      if (d == 0.0) {
        throw ParseError(den.line, den.column, "non-zero denominator", den.text,
                         "fraction has a zero denominator");
      }
      value /= d;
    }
    return value;
  }

  static double to_double(const Token& t) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw ParseError(t.line, t.column, "number", t.text, "number out of range: " + t.text);
    }
    return v;
  }

  void shift() { tok_ = lex_.next(); }

  bool is_keyword(std::string_view kw) const { return tok_.kind == Tok::Ident && tok_.text == kw; }
  bool is_punct(std::string_view p) const { return tok_.kind == Tok::Punct && tok_.text == p; }

  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    shift();
    return true;
  }

  void keyword(std::string_view kw) {
    if (!is_keyword(kw)) fail("'" + std::string(kw) + "'");
    shift();
  }

  void punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    shift();
  }

  std::string ident(std::string_view what) {
    if (tok_.kind != Tok::Ident) fail(std::string(what));
    std::string s = tok_.text;
    shift();
    return s;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = describe(tok_);
    throw ParseError(tok_.line, tok_.column, expected, found,
                     "expected " + expected + ", found " + found);
  }

  Lexer lex_;
  Token tok_;
};

std::string at_line(std::size_t line) { return " (line " + std::to_string(line) + ")"; }

// Places each listed row at its canonical configuration index. Problems are
// reported as findings so they surface next to the validator's.
ConditionalTable place_rows(const RawNode& raw, const std::map<std::string, const NodeDef*>& defs,
                            ValidationReport& report) {
  const NodeDef& node = raw.def;
  ConditionalTable table{node.id, {}};
  const std::string loc = "/tables/" + node.id;

  if (node.parents.empty()) {
    if (raw.rows.size() != 1 || !raw.rows.front().bare) {
      report.add({Severity::Error, "ROW_CONFIG",
                  "parentless node '" + node.id + "' takes exactly one bare probability list" +
                      at_line(raw.line),
                  loc});
    }
    for (const auto& r : raw.rows) table.rows.push_back(r.probs);
    return table;
  }

  std::vector<const NodeDef*> parents;
  for (const auto& p : node.parents) {
    auto it = defs.find(p);
    if (it == defs.end()) {
      // DANGLING_PARENT comes from the validator; keep rows in source order.
      for (const auto& r : raw.rows) table.rows.push_back(r.probs);
      return table;
    }
    parents.push_back(it->second);
  }
  std::size_t configs = 1;
  for (const auto* p : parents) configs *= p->states.size();

  std::vector<std::optional<std::vector<double>>> placed(configs);
  for (const auto& r : raw.rows) {
    if (r.bare) {
      report.add({Severity::Error, "ROW_CONFIG",
                  "row of '" + node.id + "' does not name its parent configuration" +
                      at_line(r.line),
                  loc});
      continue;
    }
    std::map<std::string, std::size_t> given;
    bool bad = false;
    for (const auto& [ptok, stok] : r.assignments) {
      std::size_t k = 0;
      while (k < node.parents.size() && node.parents[k] != ptok.text) ++k;
      if (k == node.parents.size()) {
        report.add({Severity::Error, "ROW_CONFIG",
                    "'" + ptok.text + "' is not a parent of '" + node.id + "'" +
                        at_line(ptok.line),
                    loc});
        bad = true;
        continue;
      }
      auto s = parents[k]->state_index(stok.text);
      if (!s) {
        report.add({Severity::Error, "ROW_CONFIG",
                    "parent '" + ptok.text + "' has no state '" + stok.text + "'" +
                        at_line(stok.line),
                    loc});
        bad = true;
        continue;
      }
      if (!given.emplace(ptok.text, *s).second) {
        report.add({Severity::Error, "ROW_CONFIG",
                    "parent '" + ptok.text + "' assigned twice in one row" + at_line(ptok.line),
                    loc});
        bad = true;
      }
    }
    if (bad) continue;
    if (given.size() != node.parents.size()) {
      report.add({Severity::Error, "ROW_CONFIG",
                  "row of '" + node.id + "' does not assign every parent" + at_line(r.line),
                  loc});
      continue;
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < parents.size(); ++k) {
      index = index * parents[k]->states.size() + given.at(node.parents[k]);
    }
    if (placed[index]) {
      report.add({Severity::Error, "DUPLICATE_ROW",
                  "parent configuration listed twice for '" + node.id + "'" + at_line(r.line),
                  loc + "/rows/" + std::to_string(index)});
      continue;
    }
    placed[index] = r.probs;
  }

  for (std::size_t i = 0; i < configs; ++i) {
    if (!placed[i]) {
      std::string config;
      std::size_t rem = i;
      std::vector<std::string> parts(parents.size());
      for (std::size_t k = parents.size(); k-- > 0;) {
        parts[k] = node.parents[k] + "=" + parents[k]->states[rem % parents[k]->states.size()];
        rem /= parents[k]->states.size();
      }
      for (const auto& p : parts) config += (config.empty() ? "" : ", ") + p;
      report.add({Severity::Error, "MISSING_ROW",
                  "no row for '" + node.id + "' given " + config, loc + "/rows/" +
                                                                      std::to_string(i)});
      table.rows.emplace_back(node.states.size(), 0.0);
    } else {
      table.rows.push_back(*placed[i]);
    }
  }
  return table;
}

}  // namespace

ModelDocument parse_text(std::string_view source) {
  Parser parser(source);
  auto [name, raw_nodes] = parser.model();

  std::map<std::string, const NodeDef*> defs;
  for (const auto& n : raw_nodes) defs.emplace(n.def.id, &n.def);

  ValidationReport report;
  std::vector<ConditionalTable> tables;
  std::map<std::string, std::vector<std::size_t>> row_lines;  // canonical row -> line
  for (const auto& n : raw_nodes) {
    tables.push_back(place_rows(n, defs, report));
    auto& lines = row_lines[n.def.id];
    lines.assign(tables.back().rows.size(), n.line);
    for (const auto& r : n.rows) {
      if (n.def.parents.empty() || r.bare) continue;
      // Recover the canonical slot of each labelled row for line annotation.
      std::size_t index = 0;
      bool ok = true;
      for (const auto& p : n.def.parents) {
        auto pd = defs.find(p);
        const auto it = std::find_if(r.assignments.begin(), r.assignments.end(),
                                     [&](const auto& a) { return a.first.text == p; });
        if (pd == defs.end() || it == r.assignments.end()) {
          ok = false;
          break;
        }
        auto s = pd->second->state_index(it->second.text);
        if (!s) {
          ok = false;
          break;
        }
        index = index * pd->second->states.size() + *s;
      }
      if (ok && index < lines.size()) lines[index] = r.line;
    }
  }

  std::vector<NodeDef> nodes;
  nodes.reserve(raw_nodes.size());
  for (auto& n : raw_nodes) nodes.push_back(std::move(n.def));
  NetworkModel model(std::move(name), std::move(nodes), std::move(tables));

  std::set<std::string> missing;
  for (const auto& f : report.findings) {
    if (f.code == "MISSING_ROW") missing.insert(f.location);
  }
  for (auto& f : validate_network(model).findings) {
    if (missing.count(f.location)) continue;  // placeholder row, already reported
    static constexpr std::string_view kPrefix = "/tables/";
    if (f.location.rfind(kPrefix, 0) == 0) {
      const auto rows_at = f.location.find("/rows/");
      if (rows_at != std::string::npos) {
        const std::string node = f.location.substr(kPrefix.size(), rows_at - kPrefix.size());
        const std::size_t r = std::stoul(f.location.substr(rows_at + 6));
        auto it = row_lines.find(node);
        if (it != row_lines.end() && r < it->second.size()) f.message += at_line(it->second[r]);
      }
    }
    report.add(std::move(f));
  }
  if (!report.ok) throw ModelValidationError(std::move(report));

  ModelDocument doc;
  doc.model = std::move(model);
  return doc;
}

}  // namespace probative
