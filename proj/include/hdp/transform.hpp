#pragma once

// Generalized head grammars, whose right-hand sides are binary trees of
// symbols (the root is the main head), and the transformations
//   tau_head : generalized head grammar -> head grammar
//   tau_two  : context-free grammar     -> two normal form
// plus the embedding of plain head grammars into generalized ones.

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hdp/grammar.hpp"
#include "hdp/hg_format.hpp"

namespace hdp {

// Immutable binary tree; absent children are empty subtrees.
class RhsTree {
 public:
  explicit RhsTree(SymId root) : root_(root) {}
  RhsTree(SymId root, std::optional<RhsTree> left, std::optional<RhsTree> right) : root_(root) {
    if (left) left_ = std::make_shared<const RhsTree>(std::move(*left));
    if (right) right_ = std::make_shared<const RhsTree>(std::move(*right));
  }

  SymId root() const { return root_; }
  const RhsTree* left() const { return left_.get(); }
  const RhsTree* right() const { return right_.get(); }
  bool is_leaf() const { return !left_ && !right_; }

  std::size_t size() const { return 1 + (left_ ? left_->size() : 0) + (right_ ? right_->size() : 0); }

  /// In-order sequence of symbols: the flat right-hand side.
  std::vector<SymId> yield() const {
    std::vector<SymId> out;
    append_yield(out);
    return out;
  }

  friend bool operator==(const RhsTree& a, const RhsTree& b) { return compare(&a, &b) == 0; }
  friend bool operator<(const RhsTree& a, const RhsTree& b) { return compare(&a, &b) < 0; }

  static int compare(const RhsTree* a, const RhsTree* b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->root_ != b->root_) return a->root_ < b->root_ ? -1 : 1;
    if (int c = compare(a->left_.get(), b->left_.get())) return c;
    return compare(a->right_.get(), b->right_.get());
  }

 private:
  void append_yield(std::vector<SymId>& out) const {
    if (left_) left_->append_yield(out);
    out.push_back(root_);
    if (right_) right_->append_yield(out);
  }

  SymId root_;
  std::shared_ptr<const RhsTree> left_;
  std::shared_ptr<const RhsTree> right_;
};

inline std::optional<RhsTree> subtree(const RhsTree* t) {
  if (!t) return std::nullopt;
  return *t;
}

struct GenHeadRule {
  SymId lhs = kNoSymbol;
  RhsTree rhs;
};

class GenHeadGrammar {
 public:
  GenHeadGrammar() = default;
  GenHeadGrammar(SymbolTable symbols, std::vector<GenHeadRule> rules, SymId start)
      : symbols_(std::move(symbols)), rules_(std::move(rules)), start_(start) {
    is_nt_.assign(symbols_.size(), false);
    for (const auto& r : rules_) {
      if (r.lhs >= symbols_.size()) throw GrammarError("rule refers to an unknown symbol");
      is_nt_[r.lhs] = true;
    }
  }

  const SymbolTable& symbols() const { return symbols_; }
  const std::vector<GenHeadRule>& rules() const { return rules_; }
  const GenHeadRule& rule(std::size_t r) const { return rules_.at(r); }
  SymId start() const { return start_; }
  const std::string& name(SymId s) const { return symbols_.name(s); }
  std::size_t symbol_count() const { return symbols_.size(); }
  bool is_nonterminal(SymId s) const { return s < is_nt_.size() && is_nt_[s]; }
  bool is_terminal(SymId s) const { return s < symbols_.size() && !is_nonterminal(s); }

 private:
  SymbolTable symbols_;
  std::vector<GenHeadRule> rules_;
  SymId start_ = kNoSymbol;
  std::vector<bool> is_nt_;
};

/// Linear notation: (α)X(β) with empty subtrees omitted, e.g. ((c)A(b))s.
inline std::string render_tree(const RhsTree& t, const SymbolTable& symbols) {
  std::string out;
  if (t.left()) out += "(" + render_tree(*t.left(), symbols) + ")";
  out += symbols.name(t.root());
  if (t.right()) out += "(" + render_tree(*t.right(), symbols) + ")";
  return out;
}

inline std::vector<Diagnostic> validate(const GenHeadGrammar& g) {
  std::vector<Diagnostic> out;
  if (g.start() >= g.symbol_count()) {
    out.push_back({std::nullopt, "start symbol is undefined"});
  } else if (!g.is_nonterminal(g.start())) {
    out.push_back({std::nullopt, "start symbol '" + g.name(g.start()) + "' has no rules"});
  }
  for (std::size_t r = 0; r < g.rules().size(); ++r)
    for (SymId s : g.rule(r).rhs.yield())
      if (s >= g.symbol_count() || g.name(s) == kBottomName)
        out.push_back({r, "rule " + std::to_string(r + 1) + ": reserved or unknown symbol"});
  return out;
}

inline void require_valid(const GenHeadGrammar& g) {
  const auto diags = validate(g);
  if (diags.empty()) return;
  std::string msg = "invalid grammar:";
  for (const auto& d : diags) msg += "\n  " + d.message;
  throw GrammarError(msg);
}

// ---------------------------------------------------------------------------
// .ghg format:  start S
//               S -> (s (A (c) (b)) ())
// tree := '(' Symbol ')' | '(' Symbol child child ')' ; child := tree | '()'

namespace detail {

class TreeLexer {
 public:
  TreeLexer(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  RhsTree parse_tree(SymbolTable& symbols) {
    auto t = parse_child(symbols);
    if (!t) fail("expected a non-empty tree");
    return *t;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

 private:
  std::optional<RhsTree> parse_child(SymbolTable& symbols) {
    skip_space();
    expect('(');
    skip_space();
    if (peek() == ')') {
      ++pos_;
      return std::nullopt;
    }
    const std::size_t sym_col = pos_;
    std::string sym;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      sym += text_[pos_++];
    if (!is_symbol_token(sym)) fail_at(sym_col, "invalid symbol '" + sym + "'");
    const SymId root = symbols.intern(sym);
    skip_space();
    if (peek() == ')') {
      ++pos_;
      return RhsTree(root);
    }
    auto left = parse_child(symbols);
    auto right = parse_child(symbols);
    skip_space();
    expect(')');
    return RhsTree(root, std::move(left), std::move(right));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(line_, offset_ + pos + 1, msg);
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

inline std::string tree_to_ghg(const RhsTree& t, const SymbolTable& symbols) {
  if (t.is_leaf()) return "(" + symbols.name(t.root()) + ")";
  const std::string l = t.left() ? tree_to_ghg(*t.left(), symbols) : "()";
  const std::string r = t.right() ? tree_to_ghg(*t.right(), symbols) : "()";
  return "(" + symbols.name(t.root()) + " " + l + " " + r + ")";
}

}  // namespace detail

inline GenHeadGrammar parse_ghg(std::string_view text) {
  SymbolTable symbols;
  std::vector<GenHeadRule> rules;
  std::optional<SymId> start;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    line = detail::strip_comment(line);
    const auto tokens = detail::split_whitespace(line);
    if (tokens.empty()) continue;

    if (!start) {
      if (tokens[0].text != "start") throw ParseError(line_no, tokens[0].column, "expected 'start <Symbol>'");
      if (tokens.size() != 2 || !detail::is_symbol_token(tokens[1].text))
        throw ParseError(line_no, tokens[0].column, "expected exactly one start symbol");
      start = symbols.intern(tokens[1].text);
      continue;
    }
    if (!detail::is_symbol_token(tokens[0].text))
      throw ParseError(line_no, tokens[0].column, "invalid left-hand side '" + tokens[0].text + "'");
    if (tokens.size() < 2 || tokens[1].text != "->") throw ParseError(line_no, tokens[0].column, "expected '->'");
    const SymId lhs = symbols.intern(tokens[0].text);
    if (tokens.size() < 3) throw ParseError(line_no, tokens[1].column, "empty right-hand side");
    const std::size_t tree_col = tokens[2].column - 1;
    detail::TreeLexer lexer(line.substr(tree_col), line_no, tree_col);
    RhsTree tree = lexer.parse_tree(symbols);
    lexer.expect_end();
    rules.push_back({lhs, std::move(tree)});
  }
  if (!start) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'start' line");
  return GenHeadGrammar(std::move(symbols), std::move(rules), *start);
}

inline std::string to_ghg(const GenHeadGrammar& g) {
  std::ostringstream out;
  out << "start " << g.name(g.start()) << '\n';
  for (const auto& r : g.rules()) out << g.name(r.lhs) << " -> " << detail::tree_to_ghg(r.rhs, g.symbols()) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

/// Plain head grammar with the same language: each rhs is the tree's in-order
/// yield and the head is the root.
inline HeadGrammar flatten(const GenHeadGrammar& g) {
  std::vector<HeadRule> rules;
  for (const auto& r : g.rules()) {
    HeadRule out{r.lhs, r.rhs.yield(), r.rhs.left() ? r.rhs.left()->size() : 0};
    rules.push_back(std::move(out));
  }
  return HeadGrammar(g.symbols(), std::move(rules), g.start());
}

/// Bracket nonterminals [α] are identified by tree structure. Rules come out
/// as: one A → [α] X̲ [β] per input rule, in order, then one
/// [(α)X(β)] → [α] X̲ [β] per distinct proper subtree in order of discovery. Empty members [ϵ] are omitted.
inline HeadGrammar tau_head(const GenHeadGrammar& g) {
  require_valid(g);
  SymbolTable symbols = g.symbols();
  std::map<RhsTree, SymId> brackets;
  std::vector<HeadRule> rules;
  std::vector<const RhsTree*> pending;  // proper subtrees awaiting their rule

  auto bracket = [&](const RhsTree& t) {
    auto it = brackets.find(t);
    if (it != brackets.end()) return it->second;
    const SymId id = symbols.intern(symbols.fresh_name("[" + render_tree(t, g.symbols()) + "]", kPrimeSuffix));
    brackets.emplace(t, id);
    pending.push_back(&t);
    return id;
  };
  auto members = [&](SymId lhs, const RhsTree& t) {
    HeadRule rule{lhs, {}, 0};
    if (t.left()) rule.rhs.push_back(bracket(*t.left()));
    rule.head = rule.rhs.size();
    rule.rhs.push_back(t.root());
    if (t.right()) rule.rhs.push_back(bracket(*t.right()));
    return rule;
  };

  for (const auto& r : g.rules()) rules.push_back(members(r.lhs, r.rhs));
  for (std::size_t next = 0; next < pending.size(); ++next) {
    const RhsTree& t = *pending[next];
    rules.push_back(members(brackets.at(t), t));
  }
  return HeadGrammar(std::move(symbols), std::move(rules), g.start());
}

/// Display name of the suffix nonterminal [Xα].
inline std::string suffix_name(const std::vector<SymId>& suffix, const SymbolTable& symbols) {
  bool single_chars = true;
  for (SymId s : suffix) single_chars = single_chars && symbols.name(s).size() == 1;
  std::string out = "[";
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    if (i > 0 && !single_chars) out += '.';
    out += symbols.name(suffix[i]);
  }
  return out + "]";
}

/// Two normal form: A → X[α] per rule and [Xα] → X[α] per distinct proper
/// suffix. Heads are ignored on input; every output rule has its first member
/// as head.
inline HeadGrammar tau_two(const HeadGrammar& g) {
  require_valid(g);
  SymbolTable symbols = g.symbols();
  std::map<std::vector<SymId>, SymId> suffixes;
  std::vector<std::vector<SymId>> order;
  std::vector<HeadRule> rules;

  auto suffix_symbol = [&](std::vector<SymId> seq) {
    auto it = suffixes.find(seq);
    if (it != suffixes.end()) return it->second;
    const SymId id = symbols.intern(symbols.fresh_name(suffix_name(seq, g.symbols()), kPrimeSuffix));
    suffixes.emplace(seq, id);
    order.push_back(std::move(seq));
    return id;
  };
  auto split = [&](SymId lhs, const std::vector<SymId>& seq) {
    HeadRule rule{lhs, {seq.front()}, 0};
    if (seq.size() > 1) rule.rhs.push_back(suffix_symbol({seq.begin() + 1, seq.end()}));
    return rule;
  };

  for (const auto& r : g.rules()) rules.push_back(split(r.lhs, r.rhs));
  for (std::size_t next = 0; next < order.size(); ++next) {
    const auto seq = order[next];
    rules.push_back(split(suffixes.at(seq), seq));
  }
  return HeadGrammar(std::move(symbols), std::move(rules), g.start());
}

/// Canonical injection of a head grammar: A → x₁…x_p X̲ y₁…y_q becomes the
/// tree rooted at X whose left subtree is the chain x_p(x_{p-1}(…)) hanging
/// leftward and whose right subtree is y₁(y₂(…)) hanging rightward, so the
/// non-head members are recognized inward-out as in the plain algorithms.
inline GenHeadGrammar embed(const HeadGrammar& g) {
  require_valid(g);
  std::vector<GenHeadRule> rules;
  for (const auto& r : g.rules()) {
    std::optional<RhsTree> left;
    for (std::size_t p = 0; p < r.head; ++p) left = RhsTree(r.rhs[p], std::move(left), std::nullopt);
    std::optional<RhsTree> right;
    for (std::size_t p = r.rhs.size(); p-- > r.head + 1;) right = RhsTree(r.rhs[p], std::nullopt, std::move(right));
    rules.push_back({r.lhs, RhsTree(r.head_symbol(), std::move(left), std::move(right))});
  }
  return GenHeadGrammar(g.symbols(), std::move(rules), g.start());
}

}  // namespace hdp
