#pragma once

// Head grammars: symbols, rules with one distinguished head member,
// validation, augmentation with S' -> _|_ S, and the head-corner relations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hdp {

using SymId = std::uint32_t;
inline constexpr SymId kNoSymbol = std::numeric_limits<SymId>::max();

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SymbolTable {
 public:
  SymId intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<SymId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::optional<SymId> find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view name) const { return find(name).has_value(); }

  const std::string& name(SymId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

  /// Returns `base` if unused, otherwise `base` with `suffix` appended until fresh.
  std::string fresh_name(std::string base, std::string_view suffix) const {
    while (contains(base)) base += suffix;
    return base;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymId> ids_;
};

struct HeadRule {
  SymId lhs = kNoSymbol;
  std::vector<SymId> rhs;
  std::size_t head = 0;

  SymId head_symbol() const { return rhs.at(head); }
  std::size_t size() const { return rhs.size(); }
  bool operator==(const HeadRule&) const = default;
};

// Terminal/nonterminal status is inferred: a symbol is a nonterminal iff it
// is the left-hand side of some rule.
class HeadGrammar {
 public:
  HeadGrammar() = default;

  HeadGrammar(SymbolTable symbols, std::vector<HeadRule> rules, SymId start)
      : symbols_(std::move(symbols)), rules_(std::move(rules)), start_(start) {
    index();
  }

  const SymbolTable& symbols() const { return symbols_; }
  const std::vector<HeadRule>& rules() const { return rules_; }
  const HeadRule& rule(std::size_t r) const { return rules_.at(r); }
  SymId start() const { return start_; }
  const std::string& name(SymId id) const { return symbols_.name(id); }
  std::size_t symbol_count() const { return symbols_.size(); }

  bool is_nonterminal(SymId s) const { return s < by_lhs_.size() && !by_lhs_[s].empty(); }
  bool is_terminal(SymId s) const { return s < symbols_.size() && !is_nonterminal(s); }

  const std::vector<std::size_t>& rules_for(SymId lhs) const {
    static const std::vector<std::size_t> none;
    return lhs < by_lhs_.size() ? by_lhs_[lhs] : none;
  }

  std::vector<SymId> nonterminals() const {
    std::vector<SymId> out;
    for (SymId s = 0; s < symbols_.size(); ++s)
      if (is_nonterminal(s)) out.push_back(s);
    return out;
  }

  /// Terminals that occur in some right-hand side.
  std::vector<SymId> terminals() const {
    std::set<SymId> seen;
    for (const auto& r : rules_)
      for (SymId s : r.rhs)
        if (is_terminal(s)) seen.insert(s);
    return {seen.begin(), seen.end()};
  }

  /// `A -> c *B d` style rendering (the .hg rule syntax).
  std::string rule_string(std::size_t r) const {
    const auto& rule = rules_.at(r);
    std::string out = name(rule.lhs) + " ->";
    for (std::size_t p = 0; p < rule.rhs.size(); ++p) {
      out += ' ';
      if (p == rule.head) out += '*';
      out += name(rule.rhs[p]);
    }
    return out;
  }

 private:
  void index() {
    by_lhs_.assign(symbols_.size(), {});
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].lhs >= symbols_.size()) throw GrammarError("rule refers to an unknown symbol");
      by_lhs_[rules_[r].lhs].push_back(r);
    }
  }

  SymbolTable symbols_;
  std::vector<HeadRule> rules_;
  SymId start_ = kNoSymbol;
  std::vector<std::vector<std::size_t>> by_lhs_;
};

// Names of the two symbols added by augmentation. Neither is a legal token
// in the grammar file formats.
inline constexpr std::string_view kPrimeSuffix = "′";
inline constexpr std::string_view kBottomName = "⊥";

struct Diagnostic {
  std::optional<std::size_t> rule;  // index into HeadGrammar::rules()
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline std::vector<Diagnostic> validate(const HeadGrammar& g) {
  std::vector<Diagnostic> out;
  if (g.start() >= g.symbol_count()) {
    out.push_back({std::nullopt, "start symbol is undefined"});
  } else if (!g.is_nonterminal(g.start())) {
    out.push_back({std::nullopt, "start symbol '" + g.name(g.start()) + "' has no rules"});
  }
  for (std::size_t r = 0; r < g.rules().size(); ++r) {
    const auto& rule = g.rule(r);
    const std::string where = "rule " + std::to_string(r + 1) + " (" + g.name(rule.lhs) + ")";
    if (rule.rhs.empty()) {
      out.push_back({r, where + ": empty right-hand side"});
      continue;
    }
    if (rule.head >= rule.rhs.size()) out.push_back({r, where + ": head index out of range"});
    for (SymId s : rule.rhs) {
      if (s >= g.symbol_count()) {
        out.push_back({r, where + ": unknown symbol"});
      } else if (g.name(s) == kBottomName) {
        out.push_back({r, where + ": reserved symbol " + std::string(kBottomName)});
      }
    }
  }
  return out;
}

inline void require_valid(const HeadGrammar& g) {
  const auto diags = validate(g);
  if (diags.empty()) return;
  std::string msg = "invalid grammar:";
  for (const auto& d : diags) msg += "\n  " + d.message;
  throw GrammarError(msg);
}

// The rule set P† = P ∪ {S′ → ⊥̲ S}. The added rule is the last rule.
class AugmentedGrammar {
 public:
  explicit AugmentedGrammar(const HeadGrammar& base) : base_(base) {
    require_valid(base);
    SymbolTable symbols = base.symbols();
    start_prime_ = symbols.intern(symbols.fresh_name(base.name(base.start()) + std::string(kPrimeSuffix),
                                                      kPrimeSuffix));
    bottom_ = symbols.intern(symbols.fresh_name(std::string(kBottomName), kPrimeSuffix));
    std::vector<HeadRule> rules = base.rules();
    augmented_rule_ = rules.size();
    rules.push_back({start_prime_, {bottom_, base.start()}, 0});
    grammar_ = HeadGrammar(std::move(symbols), std::move(rules), start_prime_);
  }

  const HeadGrammar& base() const { return base_; }
  const HeadGrammar& grammar() const { return grammar_; }
  SymId start_prime() const { return start_prime_; }
  SymId bottom() const { return bottom_; }
  SymId start() const { return base_.start(); }
  std::size_t augmented_rule() const { return augmented_rule_; }

 private:
  HeadGrammar base_;
  HeadGrammar grammar_;
  SymId start_prime_ = kNoSymbol;
  SymId bottom_ = kNoSymbol;
  std::size_t augmented_rule_ = 0;
};

inline AugmentedGrammar augment(const HeadGrammar& g) { return AugmentedGrammar(g); }

enum class HeadCornerVariant { full, left, right };

// Reflexive-transitive relation over nonterminals, stored as a dense bit
// matrix. contains(B, A) reads "B ◇* A": B is reachable from A by following
// heads downward.
class HeadCornerRelation {
 public:
  HeadCornerRelation() = default;
  HeadCornerRelation(std::size_t symbol_count, HeadCornerVariant variant)
      : n_(symbol_count), variant_(variant), bits_(symbol_count * symbol_count, false) {}

  HeadCornerVariant variant() const { return variant_; }
  std::size_t symbol_count() const { return n_; }

  bool contains(SymId lower, SymId upper) const {
    return lower < n_ && upper < n_ && bits_[lower * n_ + upper];
  }

  void add(SymId lower, SymId upper) { bits_.at(lower * n_ + upper) = true; }

  /// Warshall closure; reflexive pairs must already be present.
  void close() {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t a = 0; a < n_; ++a) {
        if (!bits_[a * n_ + k]) continue;
        for (std::size_t b = 0; b < n_; ++b)
          if (bits_[k * n_ + b]) bits_[a * n_ + b] = true;
      }
  }

  std::set<std::pair<SymId, SymId>> pairs() const {
    std::set<std::pair<SymId, SymId>> out;
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (bits_[a * n_ + b]) out.emplace(static_cast<SymId>(a), static_cast<SymId>(b));
    return out;
  }

  bool operator==(const HeadCornerRelation&) const = default;

 private:
  std::size_t n_ = 0;
  HeadCornerVariant variant_ = HeadCornerVariant::full;
  std::vector<bool> bits_;
};

/// Base pairs (B, A) for one rule under `variant`, if any.
inline std::optional<std::pair<SymId, SymId>> head_corner_edge(const HeadGrammar& g, const HeadRule& rule,
                                                                HeadCornerVariant variant) {
  if (rule.rhs.empty() || rule.head >= rule.rhs.size()) return std::nullopt;
  const SymId b = rule.head_symbol();
  if (!g.is_nonterminal(b)) return std::nullopt;
  switch (variant) {
    case HeadCornerVariant::full: break;
    case HeadCornerVariant::left:
      if (rule.head != 0) return std::nullopt;
      break;
    case HeadCornerVariant::right:
      if (rule.head + 1 != rule.rhs.size()) return std::nullopt;
      break;
  }
  return std::pair{b, rule.lhs};
}

inline HeadCornerRelation head_corner(const HeadGrammar& g, HeadCornerVariant variant) {
  HeadCornerRelation rel(g.symbol_count(), variant);
  for (SymId a : g.nonterminals()) rel.add(a, a);
  for (const auto& rule : g.rules())
    if (auto e = head_corner_edge(g, rule, variant)) rel.add(e->first, e->second);
  rel.close();
  return rel;
}

inline HeadCornerRelation head_corner(const AugmentedGrammar& g, HeadCornerVariant variant) {
  return head_corner(g.grammar(), variant);
}

namespace detail {

// Finds a cycle in a directed graph over symbol ids; returns its nodes in
// edge order starting from the smallest-id node reached first by DFS.
inline std::optional<std::vector<SymId>> find_cycle(const std::vector<std::vector<SymId>>& succ) {
  enum class Mark : std::uint8_t { none, active, done };
  std::vector<Mark> mark(succ.size(), Mark::none);
  std::vector<SymId> path;
  std::optional<std::vector<SymId>> found;

  auto dfs = [&](auto&& self, SymId v) -> bool {
    mark[v] = Mark::active;
    path.push_back(v);
    for (SymId w : succ[v]) {
      if (mark[w] == Mark::active) {
        auto it = std::find(path.begin(), path.end(), w);
        found = std::vector<SymId>(it, path.end());
        return true;
      }
      if (mark[w] == Mark::none && self(self, w)) return true;
    }
    path.pop_back();
    mark[v] = Mark::done;
    return false;
  };
  for (SymId v = 0; v < succ.size(); ++v)
    if (mark[v] == Mark::none && dfs(dfs, v)) return found;
  return std::nullopt;
}

}  // namespace detail

/// A cycle A ◇ ... ◇ A, listed from the upper nonterminal downward.
inline std::optional<std::vector<SymId>> detect_head_recursion(const HeadGrammar& g) {
  std::vector<std::vector<SymId>> succ(g.symbol_count());
  for (const auto& rule : g.rules())
    if (auto e = head_corner_edge(g, rule, HeadCornerVariant::full)) succ[e->second].push_back(e->first);
  return detail::find_cycle(succ);
}

inline std::optional<std::vector<SymId>> detect_head_recursion(const AugmentedGrammar& g) {
  return detect_head_recursion(g.grammar());
}

// Without epsilon rules, A ->+ A can only go through unit rules A -> B.
inline std::optional<std::vector<SymId>> detect_cyclic(const HeadGrammar& g) {
  std::vector<std::vector<SymId>> succ(g.symbol_count());
  for (const auto& rule : g.rules())
    if (rule.rhs.size() == 1 && g.is_nonterminal(rule.rhs[0])) succ[rule.lhs].push_back(rule.rhs[0]);
  return detail::find_cycle(succ);
}

inline std::optional<std::vector<SymId>> detect_cyclic(const AugmentedGrammar& g) {
  return detect_cyclic(g.grammar());
}

}  // namespace hdp
