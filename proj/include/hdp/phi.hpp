#pragma once

// Predictive HI recognition. An item [i, k, A → γ, m, j] stands for every
// dotted rule A → α•γ•β with the same infix γ.

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdp/engine.hpp"
#include "hdp/oriented.hpp"

namespace hdp {

struct PhiItem {
  int i = 0, k = 0, m = 0, j = 0;
  SymId lhs = kNoSymbol;
  std::vector<SymId> gamma;

  bool operator==(const PhiItem&) const = default;
};

inline std::size_t hash_value(const PhiItem& it) {
  std::size_t h = hash_combine(hash_combine(std::size_t(it.i + 1), std::size_t(it.k + 1)), std::size_t(it.m + 1));
  h = hash_combine(hash_combine(h, std::size_t(it.j + 1)), it.lhs);
  for (SymId s : it.gamma) h = hash_combine(h, s);
  return h;
}

inline PhiItem mirror(const PhiItem& it, int n) {
  return {n - it.j, n - it.m, n - it.k, n - it.i, it.lhs, {it.gamma.rbegin(), it.gamma.rend()}};
}

inline std::string render_symbols(const std::vector<SymId>& seq, const HeadGrammar& g) {
  std::string out;
  for (std::size_t p = 0; p < seq.size(); ++p) out += (p ? " " : "") + g.name(seq[p]);
  return out;
}

inline std::string render(const PhiItem& it, const HeadGrammar& g) {
  return "[" + std::to_string(it.i) + ", " + std::to_string(it.k) + ", " + g.name(it.lhs) + " → " +
         render_symbols(it.gamma, g) + ", " + std::to_string(it.m) + ", " + std::to_string(it.j) + "]";
}

inline bool well_formed(const PhiItem& it, const OrientedGrammar& o) {
  return it.i <= it.k && it.k < it.m && it.m <= it.j && o.infix(it.lhs, it.gamma) != nullptr;
}

namespace phi {

using Item = PhiItem;
using Out = std::vector<Successor<Item>>;

inline const InfixInfo& info(const OrientedGrammar& o, const Item& it) {
  const InfixInfo* p = o.infix(it.lhs, it.gamma);
  if (!p) throw std::logic_error("item infix is not part of any rule");
  return *p;
}

// [i, k, A → γ, m, j] ↦ … [m, p−1, C → a, p, j]   for C → ηa̲θ, A → αγ̲Bβ, C ◇* B
inline Matcher<Item> predict_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    const auto& next = info(o, top).next;
    std::set<std::pair<SymId, SymId>> seen;
    for (const auto& rule : o.rules()) {
      const SymId a = rule.head_symbol();
      if (!o.is_terminal(a) || seen.count({rule.lhs, a})) continue;
      bool corner = false;
      for (SymId b : next) corner = corner || (o.is_nonterminal(b) && o.head_corner().contains(rule.lhs, b));
      if (!corner) continue;
      seen.insert({rule.lhs, a});
      for (int p = top.m + 1; p <= top.j; ++p) {
        if (in.at(p) != a) continue;
        Successor<Item> succ{0, {Item{top.m, p - 1, p, top.j, rule.lhs, {a}}}, {}};
        consult(succ.consulted, p, in.n());
        out.push_back(std::move(succ));
      }
    }
  };
}

// [i, k, A → γ, m, j] ↦ [i, k, A → γa, m+1, j]   for A → αγ̲aβ, a_{m+1} = a
inline Matcher<Item> scan(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    if (top.m >= top.j) return;
    const SymId a = in.at(top.m + 1);
    if (a == kNoSymbol || !o.is_terminal(a) || !info(o, top).next.count(a)) return;
    Item next = top;
    next.gamma.push_back(a);
    ++next.m;
    Successor<Item> succ{1, {std::move(next)}, {}};
    consult(succ.consulted, top.m + 1, in.n());
    out.push_back(std::move(succ));
  };
}

// [i, k, D → γ, m, j][i′, k′, B → δ, m′, j′] ↦ … [i′, k′, C → B, m′, j′]
//   if m = i′ and B → δ̲, for D → αγ̲Aβ, C → ηB̲θ with C ◇* A
inline Matcher<Item> climb_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (below.m != top.i || !info(o, top).complete) return;
    if (below.j != top.j) throw std::logic_error("invariant violated: clause 3 expects j = j′");
    const auto& next = info(o, below).next;
    std::set<SymId> seen;
    for (auto r : o.rules_with_head(top.lhs)) {
      const SymId c = o.rule(r).lhs;
      if (seen.count(c)) continue;
      bool corner = false;
      for (SymId a : next) corner = corner || (o.is_nonterminal(a) && o.head_corner().contains(c, a));
      if (!corner) continue;
      seen.insert(c);
      out.push_back({1, {Item{top.i, top.k, top.m, top.j, c, {top.lhs}}}, {}});
    }
  };
}

// [i, k, A → γ, m, j][i′, k′, B → δ, m′, j′] ↦ [i, k, A → γB, m′, j]
//   if m = k′ and B → δ̲, for A → αγ̲Bβ
inline Matcher<Item> attach(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (below.m != top.k || !info(o, top).complete || !info(o, below).next.count(top.lhs)) return;
    if (below.m != top.i || below.j != top.j) throw std::logic_error("invariant violated: clause 4 expects m = i′, j = j′");
    Item next = below;
    next.gamma.push_back(top.lhs);
    next.m = top.m;
    out.push_back({2, {std::move(next)}, {}});
  };
}

}  // namespace phi

inline Automaton<PhiItem> build_phi(std::shared_ptr<const GrammarContext> ctx) {
  const auto& fwd = ctx->forward;
  const auto& bwd = ctx->backward;
  const HeadGrammar& g = ctx->aug.grammar();
  const SymId sp = ctx->aug.start_prime(), bot = ctx->aug.bottom(), s = ctx->aug.start();
  std::function<PhiItem(const PhiItem&, int)> flip = [](const PhiItem& it, int n) { return mirror(it, n); };

  Automaton<PhiItem> a;
  a.name = "phi";
  a.bottom = bot;
  a.init = [=](int n) { return PhiItem{-1, -1, 0, n, sp, {bot}}; };
  a.fin = [=](int n) { return PhiItem{-1, -1, n, n, sp, {bot, s}}; };
  a.clauses = {
      {"1a", phi::predict_right(fwd)},
      {"1b", mirror_matcher(phi::predict_right(bwd), flip)},
      {"2a", phi::scan(fwd)},
      {"2b", mirror_matcher(phi::scan(bwd), flip)},
      {"3a", phi::climb_right(fwd)},
      {"3b", mirror_matcher(phi::climb_right(bwd), flip)},
      {"4a", phi::attach(fwd)},
      {"4b", mirror_matcher(phi::attach(bwd), flip)},
  };
  a.render = [&g](const PhiItem& it) { return render(it, g); };
  a.size_hint = g.rules().size() + g.nonterminals().size();
  a.owner = ctx;
  return a;
}

inline Automaton<PhiItem> build_phi(const HeadGrammar& g) { return build_phi(make_context(g)); }

}  // namespace hdp
