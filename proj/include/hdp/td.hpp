#pragma once

// Head-driven top-down recognition.

#include <memory>
#include <set>

#include "hdp/dotted.hpp"

namespace hdp {

namespace td {

using dotted::Item;
using dotted::Out;

// [i, A, j] ↦ [i, A, j][i, B, j]   for A → αB̲β
inline Matcher<Item> predict_head(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    const Item& top = s.top();
    if (!top.goal) return;
    std::set<SymId> seen;
    for (auto r : o.grammar().rules_for(top.sym)) {
      const SymId b = o.rule(r).head_symbol();
      if (o.is_nonterminal(b) && seen.insert(b).second) out.push_back({0, {Item::make_goal(top.i, b, top.j)}, {}});
    }
  };
}

// [i, k, A → α•γ•Bβ, m, j] ↦ [i, k, A → α•γ•Bβ, m, j][m, B, j]
inline Matcher<Item> predict_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    const Item& top = s.top();
    const SymId b = dotted::next_right(top, o);
    if (b == kNoSymbol || !o.is_nonterminal(b) || top.m >= top.j) return;
    out.push_back({0, {Item::make_goal(top.m, b, top.j)}, {}});
  };
}

// [i, A, j] ↦ [i, k−1, A → α•a•β, k, j]   for A → αa̲β, i < k ≤ j, a_k = a
inline Matcher<Item> scan_head(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    if (!top.goal) return;
    for (auto r : o.grammar().rules_for(top.sym)) {
      const auto& rule = o.rule(r);
      const SymId a = rule.head_symbol();
      if (!o.is_terminal(a)) continue;
      for (int k = top.i + 1; k <= top.j; ++k) {
        if (in.at(k) != a) continue;
        Successor<Item> succ{1, {Item::make(top.i, k - 1, r, rule.head, rule.head + 1, k, top.j)}, {}};
        consult(succ.consulted, k, in.n());
        out.push_back(std::move(succ));
      }
    }
  };
}

// [i, A, j][i′, k, B → •δ•, m, j′] ↦ [i, k, A → α•B•β, m, j]   for A → αB̲β
inline Matcher<Item> complete_goal(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (!below.goal || !is_complete(top, o.grammar())) return;
    if (below.i != top.i || below.j != top.j) dotted::broken("clause 3 expects i = i′ and j = j′");
    const SymId b = o.rule(top.rule).lhs;
    for (auto r : o.grammar().rules_for(below.sym)) {
      const auto& rule = o.rule(r);
      if (rule.head_symbol() != b) continue;
      out.push_back({2, {Item::make(below.i, top.k, r, rule.head, rule.head + 1, top.m, below.j)}, {}});
    }
  };
}

}  // namespace td

inline Automaton<DottedItem> build_td(std::shared_ptr<const GrammarContext> ctx) {
  const auto& fwd = ctx->forward;
  const auto& bwd = ctx->backward;
  const HeadGrammar& g = ctx->aug.grammar();
  auto flip = dotted::mirror_fn(g);

  Automaton<DottedItem> a;
  a.name = "td";
  a.bottom = ctx->aug.bottom();
  a.init = [aug = &ctx->aug](int n) { return dotted::init_item(*aug, n); };
  a.fin = [aug = &ctx->aug](int n) { return dotted::fin_item(*aug, n); };
  a.clauses = {
      {"0", td::predict_head(fwd)},
      {"0a", td::predict_right(fwd)},
      {"0b", mirror_matcher(td::predict_right(bwd), flip)},
      {"1", td::scan_head(fwd)},
      {"2a", dotted::scan(fwd)},
      {"2b", mirror_matcher(dotted::scan(bwd), flip)},
      {"3", td::complete_goal(fwd)},
      {"4a", dotted::attach(fwd)},
      {"4b", mirror_matcher(dotted::attach(bwd), flip)},
  };
  a.render = [&g](const DottedItem& it) { return render(it, g); };
  a.size_hint = g.rules().size() + g.nonterminals().size();
  a.owner = ctx;
  return a;
}

inline Automaton<DottedItem> build_td(const HeadGrammar& g) { return build_td(make_context(g)); }

}  // namespace hdp
