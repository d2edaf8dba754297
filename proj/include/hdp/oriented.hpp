#pragma once

// One reading direction of an augmented head grammar. The mirrored
// orientation reverses every right-hand side, so an a-clause written against
// it and conjugated by the item mirror yields the corresponding b-clause.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "hdp/grammar.hpp"

namespace hdp {

struct InfixInfo {
  std::set<SymId> next;   // symbols immediately right of the infix
  bool complete = false;  // the infix is a whole right-hand side
};

class OrientedGrammar {
 public:
  OrientedGrammar(const AugmentedGrammar& aug, bool mirrored)
      : aug_(aug),
        mirrored_(mirrored),
        full_(hdp::head_corner(aug, HeadCornerVariant::full)),
        left_(hdp::head_corner(aug, mirrored ? HeadCornerVariant::right : HeadCornerVariant::left)) {
    const HeadGrammar& g = aug.grammar();
    by_head_.assign(g.symbol_count(), {});
    for (std::size_t r = 0; r < g.rules().size(); ++r) {
      HeadRule rule = g.rule(r);
      if (mirrored) {
        std::reverse(rule.rhs.begin(), rule.rhs.end());
        rule.head = rule.rhs.size() - 1 - rule.head;
      }
      by_head_[rule.head_symbol()].push_back(r);
      for (std::size_t ld = 0; ld <= rule.head; ++ld)
        for (std::size_t rd = rule.head + 1; rd <= rule.rhs.size(); ++rd) {
          auto& info = infixes_[{rule.lhs, std::vector<SymId>(rule.rhs.begin() + ld, rule.rhs.begin() + rd)}];
          if (rd < rule.rhs.size()) info.next.insert(rule.rhs[rd]);
          if (ld == 0 && rd == rule.rhs.size()) info.complete = true;
        }
      rules_.push_back(std::move(rule));
    }
  }

  const AugmentedGrammar& augmented() const { return aug_; }
  const HeadGrammar& grammar() const { return aug_.grammar(); }
  bool mirrored() const { return mirrored_; }

  const std::vector<HeadRule>& rules() const { return rules_; }
  const HeadRule& rule(std::size_t r) const { return rules_[r]; }

  /// Rules (in grammar order) whose head is X.
  const std::vector<std::size_t>& rules_with_head(SymId x) const {
    static const std::vector<std::size_t> none;
    return x < by_head_.size() ? by_head_[x] : none;
  }

  const HeadCornerRelation& head_corner() const { return full_; }
  /// ∠* in this orientation; for the mirrored one it is the right relation.
  const HeadCornerRelation& left_corner() const { return left_; }

  bool is_terminal(SymId s) const { return grammar().is_terminal(s); }
  bool is_nonterminal(SymId s) const { return grammar().is_nonterminal(s); }

  const InfixInfo* infix(SymId lhs, const std::vector<SymId>& gamma) const {
    auto it = infixes_.find({lhs, gamma});
    return it == infixes_.end() ? nullptr : &it->second;
  }

 private:
  const AugmentedGrammar& aug_;
  bool mirrored_;
  HeadCornerRelation full_;
  HeadCornerRelation left_;
  std::vector<HeadRule> rules_;
  std::vector<std::vector<std::size_t>> by_head_;
  std::map<std::pair<SymId, std::vector<SymId>>, InfixInfo> infixes_;
};

// Owns the augmented grammar and both orientations, so automata can share
// it by pointer.
struct GrammarContext {
  explicit GrammarContext(const HeadGrammar& g) : aug(g), forward(aug, false), backward(aug, true) {}

  GrammarContext(const GrammarContext&) = delete;
  GrammarContext& operator=(const GrammarContext&) = delete;

  const OrientedGrammar& oriented(bool mirrored) const { return mirrored ? backward : forward; }

  AugmentedGrammar aug;
  OrientedGrammar forward;
  OrientedGrammar backward;
};

inline std::shared_ptr<const GrammarContext> make_context(const HeadGrammar& g) {
  return std::make_shared<const GrammarContext>(g);
}

/// Records p as consulted when it is a real input position.
inline void consult(std::vector<int>& out, int p, int n) {
  if (p >= 1 && p <= n) out.push_back(p);
}

}  // namespace hdp
