#pragma once

// Extended HI recognition. An item [i, k, Δ → γ, m, j] shares the infix γ
// across every left-hand side in Δ.

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hdp/engine.hpp"
#include "hdp/oriented.hpp"
#include "hdp/phi.hpp"

namespace hdp {

struct EhiItem {
  int i = 0, k = 0, m = 0, j = 0;
  std::vector<SymId> delta;  // sorted, non-empty
  std::vector<SymId> gamma;

  bool operator==(const EhiItem&) const = default;
};

inline std::size_t hash_value(const EhiItem& it) {
  std::size_t h = hash_combine(hash_combine(std::size_t(it.i + 1), std::size_t(it.k + 1)), std::size_t(it.m + 1));
  h = hash_combine(h, std::size_t(it.j + 1));
  for (SymId s : it.delta) h = hash_combine(h, s);
  h = hash_combine(h, 0xffff);
  for (SymId s : it.gamma) h = hash_combine(h, s);
  return h;
}

inline EhiItem mirror(const EhiItem& it, int n) {
  return {n - it.j, n - it.m, n - it.k, n - it.i, it.delta, {it.gamma.rbegin(), it.gamma.rend()}};
}

inline std::string render(const EhiItem& it, const HeadGrammar& g) {
  std::string d;
  for (std::size_t p = 0; p < it.delta.size(); ++p) d += (p ? ", " : "") + g.name(it.delta[p]);
  return "[" + std::to_string(it.i) + ", " + std::to_string(it.k) + ", {" + d + "} → " +
         render_symbols(it.gamma, g) + ", " + std::to_string(it.m) + ", " + std::to_string(it.j) + "]";
}

inline bool well_formed(const EhiItem& it, const OrientedGrammar& o) {
  if (it.delta.empty() || !std::is_sorted(it.delta.begin(), it.delta.end())) return false;
  for (SymId a : it.delta)
    if (!o.infix(a, it.gamma)) return false;
  return it.i <= it.k && it.k < it.m && it.m <= it.j;
}

namespace ehi {

using Item = EhiItem;
using Out = std::vector<Successor<Item>>;

inline const InfixInfo& info(const OrientedGrammar& o, SymId lhs, const std::vector<SymId>& gamma) {
  const InfixInfo* p = o.infix(lhs, gamma);
  if (!p) throw std::logic_error("item infix is not part of any rule");
  return *p;
}

/// Nonterminals B with A → αγ̲Bβ for some A ∈ Δ.
inline std::set<SymId> wanted_right(const OrientedGrammar& o, const Item& it) {
  std::set<SymId> out;
  for (SymId a : it.delta)
    for (SymId b : info(o, a, it.gamma).next)
      if (o.is_nonterminal(b)) out.insert(b);
  return out;
}

/// {C | C → ηX̲θ, C ◇* B for some B ∈ wanted}
inline std::vector<SymId> corners_with_head(const OrientedGrammar& o, SymId x, const std::set<SymId>& wanted) {
  std::set<SymId> out;
  for (auto r : o.rules_with_head(x)) {
    const SymId c = o.rule(r).lhs;
    for (SymId b : wanted)
      if (o.head_corner().contains(c, b)) {
        out.insert(c);
        break;
      }
  }
  return {out.begin(), out.end()};
}

/// {A ∈ Δ | A → αγ̲Xβ}
inline std::vector<SymId> advancing(const OrientedGrammar& o, const Item& it, SymId x) {
  std::vector<SymId> out;
  for (SymId a : it.delta)
    if (info(o, a, it.gamma).next.count(x)) out.push_back(a);
  return out;
}

// [i, k, Δ → γ, m, j] ↦ … [m, p−1, Δ′ → a, p, j]
inline Matcher<Item> predict_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    const auto wanted = wanted_right(o, top);
    if (wanted.empty()) return;
    for (int p = top.m + 1; p <= top.j; ++p) {
      const SymId a = in.at(p);
      if (a == kNoSymbol || !o.is_terminal(a)) continue;
      auto delta = corners_with_head(o, a, wanted);
      if (delta.empty()) continue;
      Successor<Item> succ{0, {Item{top.m, p - 1, p, top.j, std::move(delta), {a}}}, {}};
      consult(succ.consulted, p, in.n());
      out.push_back(std::move(succ));
    }
  };
}

// [i, k, Δ → γ, m, j] ↦ [i, k, Δ′ → γa, m+1, j]
inline Matcher<Item> scan(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    if (top.m >= top.j) return;
    const SymId a = in.at(top.m + 1);
    if (a == kNoSymbol || !o.is_terminal(a)) return;
    auto delta = advancing(o, top, a);
    if (delta.empty()) return;
    Item next{top.i, top.k, top.m + 1, top.j, std::move(delta), top.gamma};
    next.gamma.push_back(a);
    Successor<Item> succ{1, {std::move(next)}, {}};
    consult(succ.consulted, top.m + 1, in.n());
    out.push_back(std::move(succ));
  };
}

// [i, k, Δ → γ, m, j][i′, k′, Δ′ → δ, m′, j′] ↦ … [i′, k′, Δ″ → B, m′, j′]   if m = i′, B ∈ Δ′, B → δ̲
inline Matcher<Item> climb_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (below.m != top.i) return;
    if (below.j != top.j) throw std::logic_error("invariant violated: clause 3 expects j = j′");
    const auto wanted = wanted_right(o, below);
    if (wanted.empty()) return;
    for (SymId b : top.delta) {
      if (!info(o, b, top.gamma).complete) continue;
      auto delta = corners_with_head(o, b, wanted);
      if (delta.empty()) continue;
      out.push_back({1, {Item{top.i, top.k, top.m, top.j, std::move(delta), {b}}}, {}});
    }
  };
}

// [i, k, Δ → γ, m, j][i′, k′, Δ′ → δ, m′, j′] ↦ [i, k, Δ″ → γB, m′, j]   if m = k′, B ∈ Δ′, B → δ̲
inline Matcher<Item> attach(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (below.m != top.k) return;
    if (below.m != top.i || below.j != top.j) throw std::logic_error("invariant violated: clause 4 expects m = i′, j = j′");
    for (SymId b : top.delta) {
      if (!info(o, b, top.gamma).complete) continue;
      auto delta = advancing(o, below, b);
      if (delta.empty()) continue;
      Item next{below.i, below.k, top.m, below.j, std::move(delta), below.gamma};
      next.gamma.push_back(b);
      out.push_back({2, {std::move(next)}, {}});
    }
  };
}

}  // namespace ehi

inline Automaton<EhiItem> build_ehi(std::shared_ptr<const GrammarContext> ctx) {
  const auto& fwd = ctx->forward;
  const auto& bwd = ctx->backward;
  const HeadGrammar& g = ctx->aug.grammar();
  const SymId sp = ctx->aug.start_prime(), bot = ctx->aug.bottom(), s = ctx->aug.start();
  std::function<EhiItem(const EhiItem&, int)> flip = [](const EhiItem& it, int n) { return mirror(it, n); };

  Automaton<EhiItem> a;
  a.name = "ehi";
  a.bottom = bot;
  a.init = [=](int n) { return EhiItem{-1, -1, 0, n, {sp}, {bot}}; };
  a.fin = [=](int n) { return EhiItem{-1, -1, n, n, {sp}, {bot, s}}; };
  a.clauses = {
      {"1a", ehi::predict_right(fwd)},
      {"1b", mirror_matcher(ehi::predict_right(bwd), flip)},
      {"2a", ehi::scan(fwd)},
      {"2b", mirror_matcher(ehi::scan(bwd), flip)},
      {"3a", ehi::climb_right(fwd)},
      {"3b", mirror_matcher(ehi::climb_right(bwd), flip)},
      {"4a", ehi::attach(fwd)},
      {"4b", mirror_matcher(ehi::attach(bwd), flip)},
  };
  a.render = [&g](const EhiItem& it) { return render(it, g); };
  a.size_hint = g.rules().size() + g.nonterminals().size();
  a.owner = ctx;
  return a;
}

inline Automaton<EhiItem> build_ehi(const HeadGrammar& g) { return build_ehi(make_context(g)); }

}  // namespace hdp
