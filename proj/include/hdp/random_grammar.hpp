#pragma once

// Seeded random grammars for differential testing.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hdp/grammar.hpp"
#include "hdp/oracle.hpp"
#include "hdp/transform.hpp"

namespace hdp {

struct RandomGrammarParams {
  std::size_t max_nonterminals = 4;
  std::size_t max_rules = 8;
  std::size_t max_rhs = 3;
  std::vector<std::string> alphabet{"a", "b"};
  std::size_t max_tree_depth = 3;  // generalized grammars only
};

namespace detail {

inline std::size_t pick(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Nonterminals S, A, B, C, … and one lhs per rule such that every
// nonterminal gets at least one rule.
struct Skeleton {
  SymbolTable symbols;
  std::vector<SymId> nonterminals;
  std::vector<SymId> members;  // nonterminals then terminals
  std::vector<SymId> lhs;
};

inline Skeleton skeleton(std::mt19937& rng, const RandomGrammarParams& p) {
  static const char* names[] = {"S", "A", "B", "C", "D", "E", "F", "G"};
  Skeleton s;
  const std::size_t nts = pick(rng, 1, std::min<std::size_t>(p.max_nonterminals, 8));
  for (std::size_t i = 0; i < nts; ++i) s.nonterminals.push_back(s.symbols.intern(names[i]));
  s.members = s.nonterminals;
  for (const auto& t : p.alphabet) s.members.push_back(s.symbols.intern(t));
  const std::size_t rules = pick(rng, nts, std::max(nts, p.max_rules));
  s.lhs = s.nonterminals;
  while (s.lhs.size() < rules) s.lhs.push_back(s.nonterminals[pick(rng, 0, nts - 1)]);
  std::shuffle(s.lhs.begin() + 1, s.lhs.end(), rng);
  return s;
}

inline std::optional<RhsTree> random_tree(std::mt19937& rng, const std::vector<SymId>& members, std::size_t depth,
                                          bool required) {
  if (depth == 0 || (!required && pick(rng, 0, 2) == 0)) return std::nullopt;
  const SymId root = members[pick(rng, 0, members.size() - 1)];
  auto left = random_tree(rng, members, depth - 1, false);
  auto right = random_tree(rng, members, depth - 1, false);
  return RhsTree(root, std::move(left), std::move(right));
}

}  // namespace detail

/// Uniform in shape: rule count, rhs length, members and head position.
inline HeadGrammar random_head_grammar(std::mt19937& rng, const RandomGrammarParams& p = {}) {
  auto s = detail::skeleton(rng, p);
  std::vector<HeadRule> rules;
  for (SymId lhs : s.lhs) {
    HeadRule r{lhs, {}, 0};
    const std::size_t len = detail::pick(rng, 1, p.max_rhs);
    for (std::size_t i = 0; i < len; ++i) r.rhs.push_back(s.members[detail::pick(rng, 0, s.members.size() - 1)]);
    r.head = detail::pick(rng, 0, len - 1);
    rules.push_back(std::move(r));
  }
  return HeadGrammar(std::move(s.symbols), std::move(rules), s.nonterminals.front());
}

inline GenHeadGrammar random_gen_head_grammar(std::mt19937& rng, const RandomGrammarParams& p = {}) {
  auto s = detail::skeleton(rng, p);
  std::vector<GenHeadRule> rules;
  for (SymId lhs : s.lhs) rules.push_back({lhs, *detail::random_tree(rng, s.members, p.max_tree_depth, true)});
  return GenHeadGrammar(std::move(s.symbols), std::move(rules), s.nonterminals.front());
}

enum class CorpusFilter {
  any,
  acyclic,             // no A →⁺ A
  non_head_recursive,  // no A ◇⁺ A (implies acyclic)
};

/// Draws grammars until `count` pass the filter and have a non-empty language
/// within `min_string_len`.
inline std::vector<HeadGrammar> head_grammar_corpus(std::uint32_t seed, std::size_t count, CorpusFilter filter,
                                                    std::size_t min_string_len = 5,
                                                    const RandomGrammarParams& p = {}) {
  std::mt19937 rng(seed);
  std::vector<HeadGrammar> out;
  while (out.size() < count) {
    HeadGrammar g = random_head_grammar(rng, p);
    if (filter == CorpusFilter::acyclic && detect_cyclic(g)) continue;
    if (filter == CorpusFilter::non_head_recursive && detect_head_recursion(g)) continue;
    if (enumerate(g, min_string_len).empty()) continue;
    out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<GenHeadGrammar> gen_head_grammar_corpus(std::uint32_t seed, std::size_t count, CorpusFilter filter,
                                                           std::size_t min_string_len = 5,
                                                           const RandomGrammarParams& p = {}) {
  std::mt19937 rng(seed);
  std::vector<GenHeadGrammar> out;
  while (out.size() < count) {
    GenHeadGrammar g = random_gen_head_grammar(rng, p);
    const HeadGrammar flat = flatten(g);
    if (filter == CorpusFilter::acyclic && detect_cyclic(flat)) continue;
    if (filter == CorpusFilter::non_head_recursive && detect_head_recursion(tau_head(g))) continue;
    if (enumerate(flat, min_string_len).empty()) continue;
    out.push_back(std::move(g));
  }
  return out;
}

/// Every string over `alphabet` of length ≤ max_len, shortest first.
inline std::vector<std::vector<SymId>> all_strings(const std::vector<SymId>& alphabet, std::size_t max_len) {
  std::vector<std::vector<SymId>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (SymId a : alphabet) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

}  // namespace hdp
