#pragma once

// Head-corner recognition: top-down prediction compiled into ◇*.

#include <memory>

#include "hdp/dotted.hpp"

namespace hdp {

namespace hc {

using dotted::Item;
using dotted::Out;

// [i, k, A → α•γ•Bβ, m, j] ↦ … [m, p−1, C → η•a•θ, p, j]   for C → ηa̲θ, C ◇* B, m < p ≤ j, a_p = a
inline Matcher<Item> predict_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    const SymId b = dotted::next_right(top, o);
    if (b == kNoSymbol || !o.is_nonterminal(b)) return;
    for (std::size_t r = 0; r < o.rules().size(); ++r) {
      const auto& rule = o.rule(r);
      const SymId a = rule.head_symbol();
      if (!o.is_terminal(a) || !o.head_corner().contains(rule.lhs, b)) continue;
      for (int p = top.m + 1; p <= top.j; ++p) {
        if (in.at(p) != a) continue;
        Successor<Item> succ{0, {Item::make(top.m, p - 1, r, rule.head, rule.head + 1, p, top.j)}, {}};
        consult(succ.consulted, p, in.n());
        out.push_back(std::move(succ));
      }
    }
  };
}

// [i, k, D → α•γ•Aβ, m, j][i′, k′, B → •δ•, m′, j′] ↦ … [i′, k′, C → η•B•θ, m′, j′]
//   if m = i′, for C → ηB̲θ with C ◇* A
inline Matcher<Item> climb_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (!is_complete(top, o.grammar())) return;
    const SymId a = dotted::next_right(below, o);
    if (a == kNoSymbol || !o.is_nonterminal(a) || below.m != top.i) return;
    if (below.j != top.j) dotted::broken("clause 3 expects j = j′");
    const SymId b = o.rule(top.rule).lhs;
    for (auto r : o.rules_with_head(b)) {
      const auto& rule = o.rule(r);
      if (!o.head_corner().contains(rule.lhs, a)) continue;
      out.push_back({1, {Item::make(top.i, top.k, r, rule.head, rule.head + 1, top.m, top.j)}, {}});
    }
  };
}

}  // namespace hc

inline Automaton<DottedItem> build_hc(std::shared_ptr<const GrammarContext> ctx) {
  const auto& fwd = ctx->forward;
  const auto& bwd = ctx->backward;
  const HeadGrammar& g = ctx->aug.grammar();
  auto flip = dotted::mirror_fn(g);

  Automaton<DottedItem> a;
  a.name = "hc";
  a.bottom = ctx->aug.bottom();
  a.init = [aug = &ctx->aug](int n) { return dotted::init_item(*aug, n); };
  a.fin = [aug = &ctx->aug](int n) { return dotted::fin_item(*aug, n); };
  a.clauses = {
      {"1a", hc::predict_right(fwd)},
      {"1b", mirror_matcher(hc::predict_right(bwd), flip)},
      {"2a", dotted::scan(fwd)},
      {"2b", mirror_matcher(dotted::scan(bwd), flip)},
      {"3a", hc::climb_right(fwd)},
      {"3b", mirror_matcher(hc::climb_right(bwd), flip)},
      {"4a", dotted::attach(fwd)},
      {"4b", mirror_matcher(dotted::attach(bwd), flip)},
  };
  a.render = [&g](const DottedItem& it) { return render(it, g); };
  a.size_hint = g.rules().size() + g.nonterminals().size();
  a.owner = ctx;
  return a;
}

inline Automaton<DottedItem> build_hc(const HeadGrammar& g) { return build_hc(make_context(g)); }

}  // namespace hdp
