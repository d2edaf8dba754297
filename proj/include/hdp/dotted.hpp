#pragma once

// Items of the top-down and head-corner automata:
//   goal   [i, A, j]
//   dotted [i, k, A → α • γ • β, m, j]   (ld, rd delimit γ inside the rhs)
// and the clause bodies the two automata share.

#include <set>
#include <string>
#include <vector>

#include "hdp/engine.hpp"
#include "hdp/oriented.hpp"

namespace hdp {

struct DottedItem {
  bool goal = false;
  int i = 0, k = 0, m = 0, j = 0;
  SymId sym = kNoSymbol;  // goal nonterminal
  std::uint32_t rule = 0;
  std::uint32_t ld = 0, rd = 0;

  static DottedItem make_goal(int i, SymId a, int j) {
    DottedItem it;
    it.goal = true;
    it.i = i;
    it.j = j;
    it.sym = a;
    return it;
  }
  static DottedItem make(int i, int k, std::size_t rule, std::size_t ld, std::size_t rd, int m, int j) {
    DottedItem it;
    it.i = i;
    it.k = k;
    it.m = m;
    it.j = j;
    it.rule = static_cast<std::uint32_t>(rule);
    it.ld = static_cast<std::uint32_t>(ld);
    it.rd = static_cast<std::uint32_t>(rd);
    return it;
  }

  bool operator==(const DottedItem&) const = default;
};

inline std::size_t hash_value(const DottedItem& it) {
  std::size_t h = it.goal;
  for (std::size_t v : {std::size_t(it.i + 1), std::size_t(it.k + 1), std::size_t(it.m + 1), std::size_t(it.j + 1),
                        std::size_t(it.sym), std::size_t(it.rule), std::size_t(it.ld), std::size_t(it.rd)})
    h = hash_combine(h, v);
  return h;
}

inline DottedItem mirror(const DottedItem& it, int n, const HeadGrammar& g) {
  if (it.goal) return DottedItem::make_goal(n - it.j, it.sym, n - it.i);
  const auto len = g.rule(it.rule).size();
  return DottedItem::make(n - it.j, n - it.m, it.rule, len - it.rd, len - it.ld, n - it.k, n - it.i);
}

inline bool is_complete(const DottedItem& it, const HeadGrammar& g) {
  return !it.goal && it.ld == 0 && it.rd == g.rule(it.rule).size();
}

inline std::string render(const DottedItem& it, const HeadGrammar& g) {
  auto pos = [](int x) { return std::to_string(x); };
  if (it.goal) return "[" + pos(it.i) + ", " + g.name(it.sym) + ", " + pos(it.j) + "]";
  const auto& r = g.rule(it.rule);
  std::string body = g.name(r.lhs) + " →";
  for (std::size_t p = 0; p <= r.size(); ++p) {
    if (p == it.ld || p == it.rd) body += " •";
    if (p < r.size()) body += " " + g.name(r.rhs[p]);
  }
  return "[" + pos(it.i) + ", " + pos(it.k) + ", " + body + ", " + pos(it.m) + ", " + pos(it.j) + "]";
}

inline bool well_formed(const DottedItem& it, const HeadGrammar& g) {
  if (it.goal) return it.i < it.j && g.is_nonterminal(it.sym);
  if (it.rule >= g.rules().size()) return false;
  const auto& r = g.rule(it.rule);
  return it.i <= it.k && it.k < it.m && it.m <= it.j && it.ld <= r.head && r.head < it.rd && it.rd <= r.size();
}

namespace dotted {

using Item = DottedItem;
using Out = std::vector<Successor<Item>>;

inline std::function<Item(const Item&, int)> mirror_fn(const HeadGrammar& g) {
  return [&g](const Item& it, int n) { return mirror(it, n, g); };
}

/// Symbol right of the right dot, if any.
inline SymId next_right(const Item& it, const OrientedGrammar& o) {
  if (it.goal) return kNoSymbol;
  const auto& r = o.rule(it.rule);
  return it.rd < r.size() ? r.rhs[it.rd] : kNoSymbol;
}

inline Item init_item(const AugmentedGrammar& aug, int n) {
  return Item::make(-1, -1, aug.augmented_rule(), 0, 1, 0, n);
}
inline Item fin_item(const AugmentedGrammar& aug, int n) {
  return Item::make(-1, -1, aug.augmented_rule(), 0, 2, n, n);
}

[[noreturn]] inline void broken(const char* what) { throw std::logic_error(std::string("invariant violated: ") + what); }

// [i, k, A → α•γ•aβ, m, j] ↦ [i, k, A → α•γa•β, m+1, j]
inline Matcher<Item> scan(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    const SymId a = next_right(top, o);
    if (a == kNoSymbol || !o.is_terminal(a) || top.m >= top.j || in.at(top.m + 1) != a) return;
    Item next = top;
    ++next.rd;
    ++next.m;
    Successor<Item> succ{1, {next}, {}};
    consult(succ.consulted, top.m + 1, in.n());
    out.push_back(std::move(succ));
  };
}

// [i, k, A → α•γ•Bβ, m, j][i′, k′, B → •δ•, m′, j′] ↦ [i, k, A → α•γB•β, m′, j]   if m = k′
inline Matcher<Item> attach(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (!is_complete(top, o.grammar())) return;
    const SymId b = o.rule(top.rule).lhs;
    if (next_right(below, o) != b || below.m != top.k) return;
    if (below.m != top.i || below.j != top.j) broken("attach expects m = i′ and j = j′");
    Item next = below;
    ++next.rd;
    next.m = top.m;
    out.push_back({2, {next}, {}});
  };
}

}  // namespace dotted
}  // namespace hdp
