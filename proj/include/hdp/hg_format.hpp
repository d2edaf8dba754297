#pragma once

// Reader and writer for the plain head grammar text format (.hg):
//
//   # comment
//   start S
//   S -> c *A b
//   A -> *a
//
// Symbol tokens are [A-Za-z0-9_']+ or a bracketed name such as [(c)A(b)] or
// [bc]; the latter are what the grammar transformations emit for their
// fresh nonterminals. A `*` prefix marks the head member.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hdp/grammar.hpp"

namespace hdp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline bool is_plain_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct LineToken {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline std::vector<LineToken> split_whitespace(std::string_view line) {
  std::vector<LineToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

// Bracket tokens: '[' ... ']' with balanced brackets and no '*' or '#'.
inline bool is_bracket_symbol(std::string_view s) {
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '*' || c == '#') return false;
    if (c == '[') ++depth;
    if (c == ']' && --depth == 0 && i + 1 != s.size()) return false;
    if (depth < 0) return false;
  }
  return depth == 0;
}

inline bool is_plain_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_plain_token_char(c)) return false;
  return true;
}

inline bool is_symbol_token(std::string_view s) { return is_plain_symbol(s) || is_bracket_symbol(s); }

}  // namespace detail

/// Parses .hg text. Syntax errors throw ParseError; semantic problems such as
/// a start symbol without rules are left to validate().
inline HeadGrammar parse_hg(std::string_view text) {
  SymbolTable symbols;
  std::vector<HeadRule> rules;
  std::optional<SymId> start;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto tokens = detail::split_whitespace(detail::strip_comment(line));
    if (tokens.empty()) continue;

    if (!start) {
      if (tokens[0].text != "start") throw ParseError(line_no, tokens[0].column, "expected 'start <Symbol>'");
      if (tokens.size() != 2) throw ParseError(line_no, tokens[0].column, "expected exactly one start symbol");
      if (!detail::is_symbol_token(tokens[1].text))
        throw ParseError(line_no, tokens[1].column, "invalid symbol '" + tokens[1].text + "'");
      start = symbols.intern(tokens[1].text);
      continue;
    }

    if (!detail::is_symbol_token(tokens[0].text))
      throw ParseError(line_no, tokens[0].column, "invalid left-hand side '" + tokens[0].text + "'");
    if (tokens.size() < 2 || tokens[1].text != "->")
      throw ParseError(line_no, tokens.size() < 2 ? tokens[0].column + tokens[0].text.size() : tokens[1].column,
                       "expected '->'");

    HeadRule rule;
    rule.lhs = symbols.intern(tokens[0].text);
    std::optional<std::size_t> head;
    for (std::size_t t = 2; t < tokens.size(); ++t) {
      std::string_view tok = tokens[t].text;
      const bool marked = tok.front() == '*';
      if (marked) tok.remove_prefix(1);
      if (!detail::is_symbol_token(tok))
        throw ParseError(line_no, tokens[t].column, "invalid symbol '" + tokens[t].text + "'");
      if (marked) {
        if (head) throw ParseError(line_no, tokens[t].column, "multiple heads");
        head = rule.rhs.size();
      }
      rule.rhs.push_back(symbols.intern(tok));
    }
    if (!rule.rhs.empty() && !head) throw ParseError(line_no, tokens[0].column, "missing head");
    rule.head = head.value_or(0);
    rules.push_back(std::move(rule));
  }

  if (!start) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'start' line");
  return HeadGrammar(std::move(symbols), std::move(rules), *start);
}

inline std::string to_hg(const HeadGrammar& g) {
  std::ostringstream out;
  out << "start " << g.name(g.start()) << '\n';
  for (std::size_t r = 0; r < g.rules().size(); ++r) out << g.rule_string(r) << '\n';
  return out.str();
}

}  // namespace hdp
