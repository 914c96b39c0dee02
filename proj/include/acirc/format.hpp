#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "acirc/circuit.hpp"

namespace acirc {

/// Parse failure with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, std::size_t column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {
struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' || c == ']')) return false;
  return true;
}

inline std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::size_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  return v;
}
}  // namespace detail

/// Reads the line format
///   ac <n> | nnf <n>
///   <id> var <name> | <id> neg <name> | <id> const <p>[/<q>]
///   <id> + <l> <r>  | <id> * <l> <r>      (NNF: or / and)
///   root <id>
/// with ids 0..n-1 in order; lines whose first token is "c" are comments.
/// The variable table follows first appearance. The result is validated.
inline Circuit parse_circuit(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  std::optional<Flavor> flavor;
  std::size_t declared = 0;
  std::optional<NodeId> root;
  std::size_t root_line = 0;
  CircuitBuilder* b = nullptr;
  std::optional<CircuitBuilder> storage;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t ln = li + 1;
    auto toks = detail::tokenize(lines[li]);
    if (toks.empty() || toks[0].text == "c") continue;
    auto fail = [&](std::size_t tok, const std::string& expected) {
      std::size_t col = tok < toks.size() ? toks[tok].column : lines[li].size() + 1;
      return ParseError(Errc::SyntaxError, ln, col, "expected " + expected);
    };
    if (!flavor) {
      if (toks[0].text == "ac") flavor = Flavor::AC;
      else if (toks[0].text == "nnf") flavor = Flavor::NNF;
      else throw fail(0, "header 'ac <n>' or 'nnf <n>'");
      auto n = toks.size() > 1 ? detail::parse_index(toks[1].text) : std::nullopt;
      if (!n) throw fail(1, "node count");
      if (toks.size() > 2) throw fail(2, "end of line");
      declared = *n;
      storage.emplace(*flavor);
      b = &*storage;
      continue;
    }
    if (root) throw fail(0, "end of file after the root line");
    if (toks[0].text == "root") {
      auto r = toks.size() > 1 ? detail::parse_index(toks[1].text) : std::nullopt;
      if (!r) throw fail(1, "root node id");
      if (toks.size() > 2) throw fail(2, "end of line");
      if (*r >= b->size()) throw ParseError(Errc::UnknownNode, ln, toks[1].column, "root names no node");
      root = static_cast<NodeId>(*r);
      root_line = ln;
      continue;
    }
    auto id = detail::parse_index(toks[0].text);
    if (!id) throw fail(0, "node id or 'root'");
    if (*id < b->size()) throw ParseError(Errc::DuplicateId, ln, toks[0].column, "node " + std::to_string(*id) + " defined twice");
    if (*id > b->size())
      throw ParseError(Errc::SyntaxError, ln, toks[0].column, "expected node id " + std::to_string(b->size()));
    if (toks.size() < 2) throw fail(1, "node kind");
    std::string_view kind = toks[1].text;
    const bool nnf = *flavor == Flavor::NNF;
    if (kind == "var" || kind == "neg") {
      if (toks.size() < 3 || !detail::valid_name(toks[2].text)) throw fail(2, "variable name");
      if (toks.size() > 3) throw fail(3, "end of line");
      b->literal(toks[2].text, kind == "var");
    } else if (kind == "const") {
      if (toks.size() < 3) throw fail(2, "constant p or p/q");
      auto q = Rational::try_parse(toks[2].text);
      if (!q) throw fail(2, "constant p or p/q");
      if (toks.size() > 3) throw fail(3, "end of line");
      if (nnf && !q->is_zero() && !q->is_one())
        throw ParseError(Errc::NonBooleanNNFConstant, ln, toks[2].column, "NNF constants are 0 or 1");
      b->constant(*q);
    } else if (kind == (nnf ? "or" : "+") || kind == (nnf ? "and" : "*")) {
      NodeId ch[2];
      for (int k = 0; k < 2; ++k) {
        auto c = toks.size() > static_cast<std::size_t>(2 + k) ? detail::parse_index(toks[2 + k].text) : std::nullopt;
        if (!c) throw fail(2 + k, "child node id");
        if (*c >= *id)
          throw ParseError(Errc::ForwardReference, ln, toks[2 + k].column,
                           "node " + std::to_string(*id) + " refers to node " + std::to_string(*c));
        ch[k] = static_cast<NodeId>(*c);
      }
      if (toks.size() > 4) throw fail(4, "end of line");
      if (kind == (nnf ? "or" : "+")) b->sum(ch[0], ch[1]);
      else b->product(ch[0], ch[1]);
    } else {
      throw fail(1, nnf ? "var, neg, const, or, and" : "var, neg, const, +, *");
    }
  }
  if (!flavor) throw ParseError(Errc::SyntaxError, lines.size(), 1, "expected header 'ac <n>' or 'nnf <n>'");
  if (b->size() != declared)
    throw ParseError(Errc::SyntaxError, lines.size(), 1,
                     "header declares " + std::to_string(declared) + " nodes, found " + std::to_string(b->size()));
  if (!root) throw ParseError(Errc::SyntaxError, lines.size(), 1, "expected 'root <id>'");
  Circuit c = b->build_unpruned(*root);
  auto rep = validate(c);
  if (!rep.ok()) {
    const auto& i = rep.issues.front();
    throw ParseError(i.code, root_line, 1, "node " + std::to_string(i.node) + ": " + i.message);
  }
  return c;
}

/// Canonical text: no comments, single spaces, rationals in lowest terms.
inline std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  const bool nnf = c.flavor() == Flavor::NNF;
  os << flavor_name(c.flavor()) << ' ' << c.size() << '\n';
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    os << g << ' ';
    switch (n.kind) {
      case NodeKind::Literal: os << (n.literal.positive ? "var " : "neg ") << c.variable_name(n.literal.var); break;
      case NodeKind::Constant: os << "const " << n.constant.str(); break;
      case NodeKind::Sum: os << (nnf ? "or " : "+ ") << n.left << ' ' << n.right; break;
      case NodeKind::Product: os << (nnf ? "and " : "* ") << n.left << ' ' << n.right; break;
    }
    os << '\n';
  }
  os << "root " << c.root() << '\n';
  return os.str();
}

}  // namespace acirc
